"""5-cycles in oriented tetravalent graphs: types, incidences, consistent
cycles, walk weights and the R+ reachability relation."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .graphcore import Graph, canonical_cycle, cycles_of_length, girth
from .hatcore import Orientation
from .perm import GroupTooLarge, Permutation, PermGroup, PointTupleConstraint, compose

DEFAULT_MAX_GROUP_ENUM = 10**5


class PentagonError(ValueError):
    pass


class GirthTooSmall(PentagonError):
    pass


class NotAWalk(PentagonError):
    pass


class UnstableBelowCap(RuntimeError):
    """The R+ fixed point did not settle within the iteration cap."""


# -- 5-cycle types --------------------------------------------------------------------


@dataclass(frozen=True)
class FiveCycleRecord:
    cycle: tuple[int, ...]
    type: int
    s_arc: tuple[int, ...] | None  # the longest directed subpath, for undirected types


def _directions(o: Orientation, cycle: tuple[int, ...]) -> list[int]:
    k = len(cycle)
    out = []
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        if (a, b) in o.arcs:
            out.append(1)
        elif (b, a) in o.arcs:
            out.append(-1)
        else:
            raise PentagonError(f"{a}-{b} is not an edge of the oriented graph")
    return out


def _classify(o: Orientation, cycle: tuple[int, ...]) -> FiveCycleRecord:
    dirs = _directions(o, cycle)
    k = len(cycle)
    if len(set(dirs)) == 1:
        return FiveCycleRecord(cycle, k, None)
    # rotate so that a direction change happens at index 0, then read off runs
    start = next(i for i in range(k) if dirs[i] != dirs[i - 1])
    best_len, best_at = 0, start
    i = 0
    while i < k:
        j = i
        while j + 1 < k and dirs[(start + j + 1) % k] == dirs[(start + i) % k]:
            j += 1
        if j - i + 1 > best_len:
            best_len, best_at = j - i + 1, (start + i) % k
        i = j + 1
    path = [cycle[(best_at + t) % k] for t in range(best_len + 1)]
    if dirs[best_at] < 0:
        path.reverse()
    return FiveCycleRecord(cycle, best_len, tuple(path))


def directed_path_lengths(o: Orientation, cycle: tuple[int, ...]) -> int:
    """Longest directed subpath of a non-directed cycle, by brute force."""
    k = len(cycle)
    best = 0
    for i in range(k):
        for step in (1, -1):
            length = 0
            while length < k:
                a = cycle[(i + step * length) % k]
                b = cycle[(i + step * (length + 1)) % k]
                if (a, b) not in o.arcs:
                    break
                length += 1
            best = max(best, length)
    return best


def _undirected_key(path: tuple[int, ...]) -> tuple[int, ...]:
    return min(path, path[::-1])


@dataclass(frozen=True)
class FiveCycleIncidence:
    """Counts keyed by undirected edge, 2-path and 3-path (lexicographically least reading)."""

    per_edge: dict[tuple[int, int], int]
    per_two_arc: dict[tuple[int, int, int], int]
    per_three_arc: dict[tuple[int, int, int, int], int]
    type_totals: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.type_totals.values())

    def edge_range(self) -> tuple[int, int]:
        vals = self.per_edge.values()
        return min(vals), max(vals)

    def max_on_two_arc(self) -> int:
        return max(self.per_two_arc.values(), default=0)

    def max_on_three_arc(self) -> int:
        return max(self.per_three_arc.values(), default=0)


@dataclass(frozen=True)
class FiveCycleReport:
    records: tuple[FiveCycleRecord, ...]
    incidence: FiveCycleIncidence

    def histogram(self) -> dict[str, int]:
        return {str(t): self.incidence.type_totals[t] for t in (2, 3, 4, 5)}

    def to_json(self) -> dict:
        lo, hi = self.incidence.edge_range()
        return {"five_cycle_types": self.histogram(), "five_cycles_per_edge": {"min": lo, "max": hi}}


def classify_five_cycles(g: Graph, o: Orientation) -> FiveCycleReport:
    if girth(g) < 5:
        raise GirthTooSmall(f"girth {girth(g)} < 5")
    records = []
    per_edge = {e: 0 for e in g.edges()}
    per_two: Counter = Counter()
    per_three: Counter = Counter()
    totals = {2: 0, 3: 0, 4: 0, 5: 0}
    for cyc in cycles_of_length(g, 5):
        rec = _classify(o, cyc)
        if rec.type != 5 and directed_path_lengths(o, cyc) != rec.type:
            raise AssertionError(f"type of {cyc} disagrees with brute-force path length")
        records.append(rec)
        totals[rec.type] += 1
        for i in range(5):
            a, b = cyc[i], cyc[(i + 1) % 5]
            per_edge[(min(a, b), max(a, b))] += 1
            per_two[_undirected_key(tuple(cyc[(i + t) % 5] for t in range(3)))] += 1
            per_three[_undirected_key(tuple(cyc[(i + t) % 5] for t in range(4)))] += 1
    if any(c > 1 for c in per_three.values()):
        raise AssertionError("a 3-arc lies on two 5-cycles in a girth-5 graph")
    incidence = FiveCycleIncidence(per_edge, dict(per_two), dict(per_three), totals)
    return FiveCycleReport(tuple(records), incidence)


def assert_no_type2(records) -> bool:
    return all(r.type != 2 for r in records)


def types_preserved(group: PermGroup, report: FiveCycleReport) -> bool:
    """Every generator maps each 5-cycle to one of the same type."""
    type_of = {r.cycle: r.type for r in report.records}
    for s in group.generators:
        img = s.images
        for cyc, t in type_of.items():
            if type_of.get(canonical_cycle([img[v] for v in cyc])) != t:
                return False
    return True


def closed_neighbourhood_sizes(g: Graph, cycles) -> set[int]:
    sizes = set()
    for cyc in cycles:
        nb = set(cyc)
        for v in cyc:
            nb.update(g.adjacency[v])
        sizes.add(len(nb))
    return sizes


def directed_two_arc_counts(o: Orientation, report: FiveCycleReport) -> dict[tuple[int, int, int], int]:
    """Number of 5-cycles through each directed 2-arc ``u -> v -> w``."""
    counts = {}
    for v in range(o.host.n):
        for u in o.in_neighbors(v):
            for w in o.out_neighbors(v):
                counts[(u, v, w)] = report.incidence.per_two_arc.get(_undirected_key((u, v, w)), 0)
    return counts


# -- consistent cycles ----------------------------------------------------------------


@dataclass(frozen=True)
class ConsistentCycleRecord:
    cycle: tuple[int, ...]  # in the direction of the orientation, starting at the seed tail
    shunt: Permutation
    orbit_id: int


@dataclass(frozen=True)
class ConsistentCycleReport:
    seed_arc: tuple[int, int]
    records: tuple[ConsistentCycleRecord, ...]
    orbit_lengths: tuple[int, ...]  # one entry per orbit, sorted

    def canonical_cycles(self) -> set[tuple[int, ...]]:
        return {canonical_cycle(r.cycle) for r in self.records}

    def to_json(self) -> dict:
        return {"consistent_cycle_lengths": list(self.orbit_lengths)}


def _trajectory(s: Permutation, u: int) -> tuple[int, ...]:
    img = s.images
    out = [u]
    x = img[u]
    while x != u:
        out.append(x)
        x = img[x]
    return tuple(out)


def consistent_cycles(
    group: PermGroup,
    g: Graph,
    o: Orientation,
    max_group_enum: int = DEFAULT_MAX_GROUP_ENUM,
    seed_arc: tuple[int, int] | None = None,
) -> ConsistentCycleReport:
    """Consistent cycles through one arc, grouped into ``group``-orbits.

    A shunt maps each arc of its cycle onto the next, so every consistent
    cycle is directed and some conjugate passes through ``seed_arc``.  The
    shunts through ``(u, v)`` towards ``w`` form the coset ``G_uv * s``.
    Two such cycles lie in one orbit iff an element of ``G_uv`` maps one
    to the other.
    """
    u, v = seed_arc if seed_arc is not None else min(o.arcs)
    if (u, v) not in o.arcs:
        raise PentagonError(f"seed {(u, v)} is not an arc of the orientation")
    stab = group.pointwise_stabilizer((u, v))
    if stab.order() > max_group_enum:
        raise GroupTooLarge(f"arc stabilizer of order {stab.order()} exceeds {max_group_enum}")
    stab_elems = stab.enumerate_elements(max_group_enum)
    found: dict[tuple[int, ...], Permutation] = {}
    for w in o.out_neighbors(v):
        s = group.find_element(PointTupleConstraint((u, v), (v, w)))
        if s is None:
            continue
        for h in stab_elems:
            shunt = compose(h, s)
            cyc = _trajectory(shunt, u)
            if cyc not in found or shunt.images < found[cyc].images:
                found[cyc] = shunt
    # G_uv orbits on the cycles through (u, v)
    orbit_of: dict[tuple[int, ...], int] = {}
    lengths = []
    for cyc in sorted(found):
        if cyc in orbit_of:
            continue
        oid = len(lengths)
        lengths.append(len(cyc))
        for h in stab_elems:
            orbit_of[tuple(h.images[x] for x in cyc)] = oid
    records = tuple(ConsistentCycleRecord(c, found[c], orbit_of[c]) for c in sorted(found))
    return ConsistentCycleReport((u, v), records, tuple(sorted(lengths)))


def is_shunt(s: Permutation, cycle) -> bool:
    k = len(cycle)
    img = s.images
    return all(img[cycle[i]] == cycle[(i + 1) % k] for i in range(k))


def find_shunt(group: PermGroup, cycle) -> Permutation | None:
    """An element rotating ``cycle`` one step forward or backward, if any."""
    cyc = tuple(cycle)
    for seq in (cyc, cyc[::-1]):
        s = group.find_element(PointTupleConstraint(seq, seq[1:] + seq[:1]))
        if s is not None:
            return s
    return None


def inconsistent_cycles(group: PermGroup, cycles) -> list[tuple[int, ...]]:
    return [tuple(c) for c in cycles if find_shunt(group, c) is None]


# -- weights and reachability -----------------------------------------------------------


def walk_weight(o: Orientation, walk) -> int:
    total = 0
    for a, b in zip(walk, walk[1:]):
        if (a, b) in o.arcs:
            total += 1
        elif (b, a) in o.arcs:
            total -= 1
        else:
            raise NotAWalk(f"{a} and {b} are not adjacent")
    return total


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _partition(labels: list[int]) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(lab, []).append(v)
    return tuple(sorted(tuple(vs) for vs in groups.values()))


@dataclass(frozen=True)
class ReachabilityReport:
    classes: tuple[tuple[int, ...], ...]
    stabilization_depth: int

    @property
    def alter_perimeter(self) -> int:
        return len(self.classes)

    @property
    def alter_complete(self) -> bool:
        return self.alter_perimeter == 1

    def to_json(self) -> dict:
        return {"alter_perimeter": self.alter_perimeter, "alter_complete": self.alter_complete}


def reachability(o: Orientation, cap: int | None = None) -> ReachabilityReport:
    """Classes of R+ as the least fixed point of a layered relation.

    A weight-0 walk with nonnegative prefix weights splits at its first
    return to height 0 into ``u -> x``, such a walk from ``x`` to ``z``,
    ``z <- y`` and a second such walk from ``y``.  So ``R_0`` is equality
    and ``R_k`` is the equivalence generated by equality and all pairs of
    tails of arcs whose heads are ``R_{k-1}``-related.
    """
    n = o.host.n
    if cap is None:
        cap = 2 * n
    ins = [o.in_neighbors(v) for v in range(n)]
    labels = list(range(n))
    for depth in range(cap + 1):
        uf = _UnionFind(n)
        first_tail: dict[int, int] = {}
        for x in range(n):
            for t in ins[x]:
                c = labels[x]
                if c in first_tail:
                    uf.union(first_tail[c], t)
                else:
                    first_tail[c] = t
        new = [uf.find(v) for v in range(n)]
        if _partition(new) == _partition(labels):
            return ReachabilityReport(_partition(labels), depth)
        labels = new
    raise UnstableBelowCap(f"R+ partition still changing after {cap} rounds")


def reachability_bfs(o: Orientation, weight_cap: int) -> tuple[tuple[int, ...], ...]:
    """R+ classes by search over (vertex, prefix weight) with weights in [0, weight_cap]."""
    n = o.host.n
    outs = [o.out_neighbors(v) for v in range(n)]
    ins = [o.in_neighbors(v) for v in range(n)]
    related = []
    for src in range(n):
        seen = {(src, 0)}
        queue = deque([(src, 0)])
        while queue:
            v, h = queue.popleft()
            steps = [(w, h + 1) for w in outs[v]] if h < weight_cap else []
            if h > 0:
                steps += [(w, h - 1) for w in ins[v]]
            for st in steps:
                if st not in seen:
                    seen.add(st)
                    queue.append(st)
        related.append(frozenset(v for v, h in seen if h == 0))
    labels = [min(r) for r in related]
    return _partition(labels)


def classes_are_blocks(group: PermGroup, report: ReachabilityReport) -> bool:
    class_of = {}
    for idx, cls in enumerate(report.classes):
        for v in cls:
            class_of[v] = idx
    for s in group.generators:
        img = s.images
        for cls in report.classes:
            if len({class_of[img[v]] for v in cls}) != 1:
                return False
    return True


@dataclass(frozen=True)
class FiveCycleChecks:
    """Structural checks for an oriented girth-5 instance."""

    types_preserved: bool
    neighbourhood_15: bool
    no_type2: bool
    all_directed: bool
    max_per_two_arc: int
    max_per_edge: int
    notes: list[str] = field(default_factory=list)


def five_cycle_checks(group: PermGroup, g: Graph, report: FiveCycleReport) -> FiveCycleChecks:
    inc = report.incidence
    return FiveCycleChecks(
        types_preserved=types_preserved(group, report),
        neighbourhood_15=closed_neighbourhood_sizes(g, [r.cycle for r in report.records]) <= {15},
        no_type2=assert_no_type2(report.records),
        all_directed=inc.type_totals[5] == inc.total,
        max_per_two_arc=inc.max_on_two_arc(),
        max_per_edge=inc.edge_range()[1] if inc.per_edge else 0,
    )
