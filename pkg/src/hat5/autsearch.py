"""Automorphism groups and canonical forms by individualization-refinement.

The search tree is the usual one: refine the ordered partition to an
equitable one, pick the first smallest non-singleton cell, individualize
each of its vertices in turn.  Leaves are discrete partitions, read as
relabelings.  A leaf is keyed by (trace of every refinement on its path,
relabeled edge list); the canonical form is the least key.  Leaves with
equal relabeled graphs differ by an automorphism.

Pruning: children in one orbit of the pointwise stabilizer of the current
prefix (within the automorphisms found so far) are explored once; a node
whose trace leaves the first path and exceeds the best leaf's is dropped;
and after a leaf matches the first leaf the search jumps back to where its
path left the first path.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from .graphcore import Graph
from .hatcore import TransitivityReport, transitivity
from .perm import Permutation, PermGroup

DEFAULT_SIZE_GUARD = 10**4
EXHAUSTIVE_LIMIT = 10


class SizeGuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class AutResult:
    generators: tuple[Permutation, ...]
    order: int
    canonical_labeling: Permutation  # vertex -> canonical position
    certificate: bytes

    def group(self, degree: int) -> PermGroup:
        return PermGroup(list(self.generators), degree=degree)


class _Partition:
    __slots__ = ("lab", "cell_of", "size")

    def __init__(self, lab: list[int], cell_of: list[int], size: dict[int, int]) -> None:
        self.lab = lab
        self.cell_of = cell_of
        self.size = size

    @classmethod
    def unit(cls, n: int) -> "_Partition":
        return cls(list(range(n)), [0] * n, {0: n})

    def copy(self) -> "_Partition":
        return _Partition(self.lab[:], self.cell_of[:], dict(self.size))

    def is_discrete(self) -> bool:
        return len(self.size) == len(self.lab)

    def target_cell(self) -> int:
        best = None
        for start in sorted(self.size):
            k = self.size[start]
            if k > 1 and (best is None or k < self.size[best]):
                best = start
        return best  # type: ignore[return-value]

    def members(self, start: int) -> list[int]:
        return self.lab[start : start + self.size[start]]

    def individualize(self, v: int) -> int:
        start = self.cell_of[v]
        k = self.size[start]
        cell = self.lab[start : start + k]
        cell.remove(v)
        self.lab[start : start + k] = [v] + cell
        self.size[start] = 1
        self.size[start + 1] = k - 1
        for x in cell:
            self.cell_of[x] = start + 1
        return start


def _refine(adj, part: _Partition, queue: list[int], trace: list) -> None:
    """Equitable refinement by neighbor counts; appends a label-free trace."""
    lab, cell_of, size = part.lab, part.cell_of, part.size
    pending = list(queue)
    in_queue = set(pending)
    while pending:
        w = pending.pop(0)
        in_queue.discard(w)
        count: dict[int, int] = {}
        for x in lab[w : w + size[w]]:
            for y in adj[x]:
                count[y] = count.get(y, 0) + 1
        touched = sorted({cell_of[y] for y in count})
        for c in touched:
            k = size[c]
            if k == 1:
                continue
            groups: dict[int, list[int]] = {}
            for v in lab[c : c + k]:
                groups.setdefault(count.get(v, 0), []).append(v)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            trace.append((w, c, tuple((key, len(groups[key])) for key in keys)))
            pos = c
            starts = []
            for key in keys:
                frag = groups[key]
                lab[pos : pos + len(frag)] = frag
                size[pos] = len(frag)
                for v in frag:
                    cell_of[v] = pos
                starts.append(pos)
                pos += len(frag)
            if c in in_queue:
                new = starts[1:]
            else:
                largest = max(starts, key=lambda s: (size[s], -s))
                new = [s for s in starts if s != largest]
            for s in new:
                if s not in in_queue:
                    in_queue.add(s)
                    pending.append(s)
    # a cheap invariant of the final partition closes the trace step
    trace.append(tuple(sorted(size.items())))


class _Search:
    def __init__(self, g: Graph) -> None:
        self.g = g
        self.n = g.n
        self.adj = g.adjacency
        self.edges = g.edges()
        self.gens: list[Permutation] = []
        self.group: PermGroup | None = None
        self.first_path: list[int] | None = None
        self.first_key = None
        self.first_lab: list[int] | None = None
        self.first_traces: list = []
        self.best_key = None
        self.best_traces: list | None = None
        self.best_lab: list[int] | None = None
        self.best_path: list[int] | None = None
        self._stab_cache: dict[tuple[int, ...], dict[int, int]] = {}

    # -- group bookkeeping --

    def _add_automorphism(self, lab_a: list[int], lab_b: list[int]) -> bool:
        # position i holds lab_a[i] in one leaf and lab_b[i] in the other
        images = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            images[a] = b
        perm = Permutation(tuple(images))
        if perm.is_identity():
            return False
        if self.group is not None and perm in self.group:
            return False
        self.gens.append(perm)
        self.group = PermGroup(self.gens, degree=self.n)
        self._stab_cache.clear()
        return True

    def _orbits_fixing(self, prefix: tuple[int, ...]) -> dict[int, int] | None:
        if self.group is None:
            return None
        hit = self._stab_cache.get(prefix)
        if hit is None:
            stab = self.group.pointwise_stabilizer(prefix) if prefix else self.group
            hit = {}
            for orb in stab.orbits():
                rep = min(orb)
                for v in orb:
                    hit[v] = rep
            self._stab_cache[prefix] = hit
        return hit

    # -- tree walk --

    def _leaf_key(self, part: _Partition):
        pos = part.cell_of
        return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in self.edges))

    def run(self) -> None:
        root = _Partition.unit(self.n)
        traces: list = []
        t: list = []
        _refine(self.adj, root, [0], t)
        traces.append(tuple(t))
        self._visit(root, [], traces)

    def _visit(self, part: _Partition, path: list[int], traces: list) -> int | None:
        """Returns a level to jump back to, or None."""
        if self.first_path is not None:
            mine = tuple(traces)
            # leaves below can neither match the first leaf nor beat the best
            if mine != tuple(self.first_traces[: len(traces)]) and mine > tuple(self.best_traces[: len(traces)]):
                return None
        if part.is_discrete():
            return self._leaf(part, path, traces)
        start = part.target_cell()
        cell = sorted(part.members(start))
        explored: set[int] = set()
        level = len(path)
        for v in cell:
            orbit_rep = self._orbits_fixing(tuple(path))
            if orbit_rep is not None and any(orbit_rep[v] == orbit_rep[x] for x in explored):
                continue
            explored.add(v)
            child = part.copy()
            pos = child.individualize(v)
            t: list = [("ind", pos)]
            _refine(self.adj, child, [pos], t)
            jump = self._visit(child, path + [v], traces + [tuple(t)])
            if jump is not None and jump < level:
                return jump
        return None

    def _leaf(self, part: _Partition, path: list[int], traces: list) -> int | None:
        key = (tuple(traces), self._leaf_key(part))
        lab = part.lab[:]
        if self.first_path is None:
            self.first_path, self.first_key, self.first_lab = path[:], key, lab
            self.first_traces = list(traces)
            self.best_key, self.best_traces, self.best_lab, self.best_path = key, list(traces), lab, path[:]
            return None
        if key == self.first_key:
            self._add_automorphism(self.first_lab, lab)
            common = 0
            while common < len(path) and path[common] == self.first_path[common]:
                common += 1
            return common
        if key == self.best_key:
            self._add_automorphism(self.best_lab, lab)
            return None
        if key < self.best_key:
            self.best_key, self.best_traces, self.best_lab, self.best_path = key, list(traces), lab, path[:]
        return None


def _check_size(g: Graph, size_guard: int) -> None:
    if g.n > size_guard:
        raise SizeGuardExceeded(f"{g.n} vertices exceeds the size guard {size_guard}")


def _certificate(g: Graph, key) -> bytes:
    traces, edges = key
    digest = hashlib.sha256(repr(traces).encode()).hexdigest()
    lines = [f"HATCANON v1 {g.n} {len(edges)} {digest}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return ("\n".join(lines) + "\n").encode()


def automorphism_group(g: Graph, size_guard: int = DEFAULT_SIZE_GUARD) -> AutResult:
    _check_size(g, size_guard)
    s = _Search(g)
    s.run()
    labeling = [0] * g.n
    for pos, v in enumerate(s.best_lab):
        labeling[v] = pos
    order = s.group.order() if s.group is not None else 1
    return AutResult(tuple(s.gens), order, Permutation(tuple(labeling)), _certificate(g, s.best_key))


def canonical_form(g: Graph, size_guard: int = DEFAULT_SIZE_GUARD) -> bytes:
    return automorphism_group(g, size_guard).certificate


def certificate_hex(g: Graph, size_guard: int = DEFAULT_SIZE_GUARD) -> str:
    return hashlib.sha256(canonical_form(g, size_guard)).hexdigest()


def is_isomorphic(g: Graph, h: Graph, size_guard: int = DEFAULT_SIZE_GUARD) -> bool:
    return g.n == h.n and canonical_form(g, size_guard) == canonical_form(h, size_guard)


@dataclass(frozen=True)
class HatWitness:
    half_arc_transitive: bool
    aut_order: int
    report: TransitivityReport


def is_half_arc_transitive_graph(g: Graph, size_guard: int = DEFAULT_SIZE_GUARD) -> HatWitness:
    res = automorphism_group(g, size_guard)
    group = res.group(g.n)
    rep = transitivity(group, g)
    return HatWitness(rep.half_arc_transitive, res.order, rep)


# -- exhaustive oracle -----------------------------------------------------------------


def exhaustive_automorphisms(g: Graph) -> list[Permutation]:
    """Every automorphism, by trying all vertex permutations (small graphs only)."""
    if g.n > EXHAUSTIVE_LIMIT:
        raise SizeGuardExceeded(f"exhaustive search limited to {EXHAUSTIVE_LIMIT} vertices")
    edges = set(g.edges())
    out = []
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges for u, v in edges):
            out.append(Permutation(perm))
    return out


def exhaustive_canonical_edges(g: Graph) -> tuple[tuple[int, int], ...]:
    """Least relabeled edge list over all relabelings (small graphs only)."""
    if g.n > EXHAUSTIVE_LIMIT:
        raise SizeGuardExceeded(f"exhaustive search limited to {EXHAUSTIVE_LIMIT} vertices")
    edges = g.edges()
    return min(
        tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges))
        for p in itertools.permutations(range(g.n))
    )


def relabel_permutation(g: Graph, perm: Permutation) -> Graph:
    return g.relabel(perm.images)

