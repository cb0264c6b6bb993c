"""Group actions on tetravalent graphs: transitivity, induced orientation,
alternating cycles."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graphcore import Graph
from .perm import DegreeMismatch, Permutation, PermGroup, PointTupleConstraint

Arc = tuple[int, int]


class ActionError(ValueError):
    """The group does not act on the graph as required."""


class NotTetravalent(ActionError):
    pass


class InvariantViolation(AssertionError):
    """A structural guarantee for half-arc-transitive actions failed."""


def check_action(group: PermGroup, g: Graph) -> bool:
    if group.degree != g.n:
        raise DegreeMismatch(f"group degree {group.degree} != vertex count {g.n}")
    for s in group.generators:
        img = s.images
        for u, v in g.edges():
            if not g.has_edge(img[u], img[v]):
                return False
    return True


def _orbit_of_pairs(group: PermGroup, seed: Arc, unordered: bool) -> set[Arc]:
    gens = [s.images for s in group.generators]
    start = tuple(sorted(seed)) if unordered else seed
    seen = {start}
    stack = [start]
    while stack:
        u, v = stack.pop()
        for s in gens:
            x, y = s[u], s[v]
            item = (min(x, y), max(x, y)) if unordered else (x, y)
            if item not in seen:
                seen.add(item)
                stack.append(item)
    return seen


def arc_orbit(group: PermGroup, arc: Arc) -> set[Arc]:
    return _orbit_of_pairs(group, arc, unordered=False)


def edge_orbit(group: PermGroup, edge: Arc) -> set[Arc]:
    return _orbit_of_pairs(group, edge, unordered=True)


@dataclass(frozen=True)
class TransitivityReport:
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    vertex_stabilizer_order: int

    @property
    def half_arc_transitive(self) -> bool:
        return self.vertex_transitive and self.edge_transitive and not self.arc_transitive

    def to_json(self) -> dict:
        return {
            "vertex_transitive": self.vertex_transitive,
            "edge_transitive": self.edge_transitive,
            "arc_transitive": self.arc_transitive,
            "half_arc_transitive": self.half_arc_transitive,
            "stabilizer_order": self.vertex_stabilizer_order,
        }


def transitivity(group: PermGroup, g: Graph) -> TransitivityReport:
    if not check_action(group, g):
        raise ActionError("some generator does not preserve adjacency")
    edges = g.edges()
    vt = len(group.orbit(0)) == g.n
    if edges:
        seed = edges[0]
        et = len(edge_orbit(group, seed)) == len(edges)
        at = len(arc_orbit(group, seed)) == 2 * len(edges)
    else:
        et = at = True
    stab = group.stabilizer(0).order()
    return TransitivityReport(vt, et, at, stab)


def default_seed_arc(g: Graph) -> Arc:
    """Lexicographically least arc."""
    for u in range(g.n):
        if g.adjacency[u]:
            return (u, g.adjacency[u][0])
    raise ActionError("graph has no edges")


@dataclass(frozen=True)
class Orientation:
    """One arc per edge of ``host``."""

    host: Graph
    arcs: frozenset[Arc]

    def __post_init__(self) -> None:
        edges = set(self.host.edges())
        if len(self.arcs) != len(edges) or {(min(a), max(a)) for a in self.arcs} != edges:
            raise ActionError("orientation must contain exactly one arc per edge")

    def __contains__(self, arc: object) -> bool:
        return arc in self.arcs

    def out_neighbors(self, v: int) -> list[int]:
        return [w for w in self.host.adjacency[v] if (v, w) in self.arcs]

    def in_neighbors(self, v: int) -> list[int]:
        return [w for w in self.host.adjacency[v] if (w, v) in self.arcs]

    def reversed(self) -> "Orientation":
        return Orientation(self.host, frozenset((v, u) for u, v in self.arcs))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def is_balanced(self) -> bool:
        """Every vertex has in-degree 2 and out-degree 2."""
        outdeg = Counter(u for u, _ in self.arcs)
        indeg = Counter(v for _, v in self.arcs)
        return all(outdeg[v] == 2 and indeg[v] == 2 for v in range(self.host.n))


def orientation_from_arcs(g: Graph, arcs) -> Orientation:
    return Orientation(g, frozenset(tuple(a) for a in arcs))


def induced_orientation(group: PermGroup, g: Graph, seed_arc: Arc | None = None) -> Orientation:
    """The group orbit of ``seed_arc`` (default: the least arc)."""
    if seed_arc is None:
        seed_arc = default_seed_arc(g)
    if not g.has_edge(*seed_arc):
        raise ActionError(f"seed {seed_arc} is not an arc")
    orbit = arc_orbit(group, tuple(seed_arc))
    if (seed_arc[1], seed_arc[0]) in orbit:
        raise ActionError("action is arc-transitive on this edge orbit; no induced orientation")
    return Orientation(g, frozenset(orbit))


def is_invariant(group: PermGroup, o: Orientation) -> bool:
    for s in group.generators:
        img = s.images
        for u, v in o.arcs:
            if (img[u], img[v]) not in o.arcs:
                return False
    return True


def no_adjacent_swap(group: PermGroup, g: Graph) -> bool:
    """True iff no group element reverses an arc (checked on arc-orbit reps)."""
    remaining = set(g.arcs())
    while remaining:
        rep = min(remaining)
        remaining -= arc_orbit(group, rep)
        if group.find_element(PointTupleConstraint(rep, (rep[1], rep[0]))) is not None:
            return False
    return True


# -- alternating cycles -------------------------------------------------------------


@dataclass(frozen=True)
class AltCycleReport:
    cycles: tuple[tuple[int, ...], ...]
    radius: int
    attachment: int
    tightly_attached: bool
    pairwise_intersection_sizes: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "attachment": self.attachment,
            "tightly_attached": self.tightly_attached,
            "alternating_cycle_count": len(self.cycles),
        }


def _alternating_walk(o: Orientation, start: Arc, outs, ins) -> list[int]:
    """Closed alternating walk through the arc ``start`` (tail first).

    Arriving at a head, leave along the other in-arc backwards; arriving at a
    tail, leave along the other out-arc.
    """
    u, v = start
    walk = [u]
    prev, cur = u, v
    at_head = True
    while True:
        walk.append(cur)
        if at_head:
            nxt = ins[cur][1] if ins[cur][0] == prev else ins[cur][0]
        else:
            nxt = outs[cur][1] if outs[cur][0] == prev else outs[cur][0]
        at_head = not at_head
        prev, cur = cur, nxt
        # the walk closes when we are about to repeat the starting arc
        if (prev, cur) == (u, v) and at_head:
            walk.pop()
            return walk


def alternating_cycles(o: Orientation) -> AltCycleReport:
    if not o.is_balanced():
        raise InvariantViolation("orientation is not 2-in/2-out at every vertex")
    g = o.host
    outs = {v: o.out_neighbors(v) for v in range(g.n)}
    ins = {v: o.in_neighbors(v) for v in range(g.n)}
    covered: set[Arc] = set()
    cycles: list[tuple[int, ...]] = []
    for arc in sorted(o.arcs):
        if arc in covered:
            continue
        walk = _alternating_walk(o, arc, outs, ins)
        k = len(walk)
        if len(set(walk)) != k:
            raise InvariantViolation(f"alternating walk through {arc} revisits a vertex")
        for i in range(k):
            a, b = walk[i], walk[(i + 1) % k]
            covered.add((a, b) if (a, b) in o.arcs else (b, a))
        cycles.append(tuple(walk))
    lengths = {len(c) for c in cycles}
    if len(lengths) != 1:
        raise InvariantViolation(f"alternating cycles of different lengths {sorted(lengths)}")
    length = lengths.pop()
    if length % 2:
        raise InvariantViolation("alternating cycle of odd length")
    if sum(len(c) for c in cycles) != g.edge_count:
        raise InvariantViolation("alternating cycles do not partition the edge set")
    # vertex -> cycles through it; nonempty intersections counted per pair
    member: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for idx, c in enumerate(cycles):
        for v in set(c):
            member[v].append(idx)
    inter: Counter = Counter()
    for v, ids in member.items():
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                inter[(ids[x], ids[y])] += 1
    sizes = Counter(inter.values())
    if len(sizes) > 1:
        raise InvariantViolation(f"alternating cycles meet in different numbers of vertices {dict(sizes)}")
    radius = length // 2
    attachment = next(iter(sizes)) if sizes else 0
    return AltCycleReport(
        cycles=tuple(cycles),
        radius=radius,
        attachment=attachment,
        tightly_attached=attachment == radius,
        pairwise_intersection_sizes=tuple(sorted(sizes.items())),
    )


def require_tetravalent(g: Graph) -> None:
    if not g.is_regular(4):
        raise NotTetravalent("graph is not tetravalent")


def arc_stabilizer_elements(group: PermGroup, arc: Arc) -> list[Permutation]:
    return group.pointwise_stabilizer(arc).enumerate_elements()
