"""Simple undirected graphs, short cycles and the HATGRAPH/DOT formats."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


class LoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EndpointError(GraphError):
    pass


MAX_CYCLE_LENGTH = 8

INFINITY = math.inf


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.vertex_count

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        # neighbor lists are short; linear scan beats bisect here
        return v in nbrs

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u]]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def is_regular(self, k: int | None = None) -> bool:
        degs = set(self.degrees())
        if len(degs) != 1:
            return False
        return k is None or degs == {k}

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """The graph with vertex ``v`` renamed ``perm[v]``."""
        return from_edges(self.vertex_count, [(perm[u], perm[v]) for u, v in self.edges()])


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n <= 0:
        raise GraphError("vertex count must be positive")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        if v in adj[u]:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


def degrees(g: Graph) -> list[int]:
    return g.degrees()


def is_connected(g: Graph) -> bool:
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    best = INFINITY
    for v in range(g.n):
        best = min(best, _girth_from(g, v, best))
        if best == 3:
            break
    return int(best) if best != INFINITY else INFINITY


def _girth_from(g: Graph, root: int, bound: float) -> float:
    # shortest closed walk through a non-tree edge from root's BFS; the
    # minimum over all roots is the girth
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    best = bound
    while queue:
        v = queue.popleft()
        if 2 * dist[v] + 1 >= best:
            break
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                parent[w] = v
                queue.append(w)
            elif parent[v] != w:
                best = min(best, dist[v] + dist[w] + 1)
    return best


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection of a cyclic sequence."""
    k = len(vertices)
    seq = list(vertices)
    i = seq.index(min(seq))
    fwd = tuple(seq[(i + j) % k] for j in range(k))
    bwd = tuple(seq[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def is_cycle(g: Graph, vertices: Sequence[int]) -> bool:
    k = len(vertices)
    if k < 3 or len(set(vertices)) != k:
        return False
    return all(g.has_edge(vertices[i], vertices[(i + 1) % k]) for i in range(k))


def cycles_of_length(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Every ``k``-cycle once, in canonical form, sorted.

    Rooted DFS from the least vertex of each cycle; only vertices above the
    root are entered, and the second vertex must be smaller than the last so
    each cycle is produced in exactly its canonical orientation.
    """
    if not 3 <= k <= MAX_CYCLE_LENGTH:
        raise GraphError(f"cycle length {k} outside supported range 3..{MAX_CYCLE_LENGTH}")
    adj = g.adjacency
    out: list[tuple[int, ...]] = []
    for root in range(g.n):
        path = [root]
        on_path = {root}

        def extend() -> None:
            v = path[-1]
            if len(path) == k:
                if root in adj[v] and path[1] < v:
                    out.append(tuple(path))
                return
            for w in adj[v]:
                if w > root and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend()
                    path.pop()
                    on_path.discard(w)

        extend()
    out.sort()
    return out


def cycles_through_edge_counts(g: Graph, cycles: Iterable[Sequence[int]]) -> dict[tuple[int, int], int]:
    counts = {e: 0 for e in g.edges()}
    for c in cycles:
        k = len(c)
        for i in range(k):
            u, v = c[i], c[(i + 1) % k]
            counts[(u, v) if u < v else (v, u)] += 1
    return counts


def distance_matrix_row(g: Graph, root: int) -> list[int]:
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


# -- HATGRAPH v1 and DOT -------------------------------------------------------

GRAPH_HEADER = "HATGRAPH v1"


def dumps_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [GRAPH_HEADER, f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> Graph:
    lines = [ln for ln in text.splitlines()]
    if not lines or lines[0].strip() != GRAPH_HEADER:
        raise GraphError(f"missing {GRAPH_HEADER!r} header")
    try:
        n, m = (int(tok) for tok in lines[1].split())
    except (IndexError, ValueError):
        raise GraphError("second line must be 'n m'") from None
    edges = []
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        try:
            u, v = (int(tok) for tok in line.split())
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'u v'") from None
        edges.append((u, v))
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, file has {len(edges)}")
    return from_edges(n, edges)


def dumps_dot(g: Graph, arcs: Iterable[tuple[int, int]] | None = None, name: str = "G") -> str:
    """DOT text; an undirected graph, or a digraph when ``arcs`` are given."""
    if arcs is None:
        lines = [f"graph {name} {{"]
        lines.extend(f"  {v};" for v in range(g.n))
        lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    else:
        arc_list = sorted(arcs)
        if len(arc_list) != g.edge_count or {tuple(sorted(a)) for a in arc_list} != set(g.edges()):
            raise GraphError("orientation does not cover every edge exactly once")
        lines = [f"digraph {name} {{"]
        lines.extend(f"  {v};" for v in range(g.n))
        lines.extend(f"  {u} -> {v};" for u, v in arc_list)
    lines.append("}")
    return "\n".join(lines) + "\n"
