"""Constructors for the tetravalent graph families studied here.

Vertex numbering is part of the public contract:

* ``xo(m, r, q)``: ``u_i^j`` is vertex ``i*r + j``;
* ``rose_window(n, a, r)``: ``x_i`` is ``i`` and ``y_i`` is ``n + i``;
* ``xiv(m, n, ...)``: ``u_i^j`` is vertex ``i*n + j``;
* ``cayley``: vertex ``k`` is the ``k``-th group element in enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .graphcore import Graph, from_edges
from .perm import DEFAULT_ENUM_BOUND, Permutation, PermGroup, compose, inverse


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Construction:
    """A constructed graph with its vertex names and family metadata."""

    graph: Graph
    labels: tuple[str, ...]
    family: str
    params: dict
    edge_tags: dict[tuple[int, int], str] = field(default_factory=dict)

    def sidecar(self) -> dict:
        out = {
            "family": self.family,
            "params": self.params,
            "labels": list(self.labels),
        }
        if self.edge_tags:
            out["edge_tags"] = {f"{u} {v}": t for (u, v), t in sorted(self.edge_tags.items())}
        return out


# -- X_o(m, r; q) -----------------------------------------------------------------


@dataclass(frozen=True)
class XoParams:
    m: int
    r: int
    q: int

    def __post_init__(self) -> None:
        m, r, q = self.m, self.r, self.q
        if m < 3:
            raise ParameterError(f"m must be at least 3, got {m}")
        if r < 3 or r % 2 == 0:
            raise ParameterError(f"r must be odd and at least 3, got {r}")
        if not 0 <= q < r:
            raise ParameterError(f"q must lie in Z_{r}, got {q}")
        if pow(q, m, r) not in (1, r - 1):
            raise ParameterError(f"q^m = {pow(q, m, r)} is not +-1 in Z_{r}")


def xo(m: int, r: int, q: int) -> Construction:
    p = XoParams(m, r, q % r if q >= 0 else q % r)
    m, r, q = p.m, p.r, p.q
    edges = []
    for i in range(m):
        step = pow(q, i, r)
        for j in range(r):
            for s in (step, -step):
                edges.append((i * r + j, ((i + 1) % m) * r + (j + s) % r))
    labels = tuple(f"u_{i}^{j}" for i in range(m) for j in range(r))
    return Construction(from_edges(m * r, edges), labels, "xo", {"m": m, "r": r, "q": q})


def xo_orientation(m: int, r: int, q: int) -> list[tuple[int, int]]:
    """Arcs from ``u_i^j`` to ``u_{i+1}^{j +- q^i}``."""
    arcs = []
    for i in range(m):
        step = pow(q, i, r)
        for j in range(r):
            for s in (step, -step):
                arcs.append((i * r + j, ((i + 1) % m) * r + (j + s) % r))
    return sorted(arcs)


def xo_generators(m: int, r: int, q: int) -> dict[str, Permutation]:
    """Shift ``j -> j+1``, layer step ``u_i^j -> u_{i+1}^{qj}``, flip ``j -> -j``.

    ``shift`` and ``step`` generate a regular subgroup; adding ``flip``
    gives a half-arc-transitive group of order ``2mr``.  The layer step
    needs ``q^m = 1``.
    """
    XoParams(m, r, q)
    if pow(q, m, r) != 1:
        raise ParameterError("the layer-step automorphism needs q^m = 1")
    n = m * r
    shift = [0] * n
    step = [0] * n
    flip = [0] * n
    for i in range(m):
        for j in range(r):
            v = i * r + j
            shift[v] = i * r + (j + 1) % r
            step[v] = ((i + 1) % m) * r + (q * j) % r
            flip[v] = i * r + (-j) % r
    return {"shift": Permutation(shift), "step": Permutation(step), "flip": Permutation(flip)}


# -- Rose window graphs ------------------------------------------------------------


@dataclass(frozen=True)
class RoseWindowParams:
    n: int
    a: int
    r: int

    def __post_init__(self) -> None:
        n, a, r = self.n, self.a, self.r
        if n < 3:
            raise ParameterError(f"n must be at least 3, got {n}")
        if not 1 <= a <= n - 1:
            raise ParameterError(f"a must satisfy 1 <= a <= n-1, got {a}")
        if not (1 <= r and 2 * r < n):
            raise ParameterError(f"r must satisfy 1 <= r < n/2, got {r}")
        if (2 * r) % n == 0:
            raise ParameterError("degenerate hub: 2r = 0 mod n gives multi-edges")
        if a % n == 0:
            raise ParameterError("degenerate spokes: a = 0 mod n gives multi-edges")


def rose_window(n: int, a: int, r: int) -> Construction:
    RoseWindowParams(n, a, r)
    tags: dict[tuple[int, int], str] = {}

    def add(u: int, v: int, tag: str) -> None:
        key = (min(u, v), max(u, v))
        if key in tags:
            raise ParameterError(f"degenerate parameters: edge {key} appears twice")
        tags[key] = tag

    for i in range(n):
        add(i, (i + 1) % n, "rim")
        add(n + i, n + (i + r) % n, "hub")
        add(i, n + i, "spoke")
        add(i, n + (i - a) % n, "spoke")
    labels = tuple([f"x_{i}" for i in range(n)] + [f"y_{i}" for i in range(n)])
    g = from_edges(2 * n, tags)
    return Construction(g, labels, "rose_window", {"n": n, "a": a, "r": r}, tags)


@dataclass(frozen=True)
class R12Package:
    construction: Construction
    rho: Permutation
    mu: Permutation
    sigma: Permutation

    @property
    def graph(self) -> Graph:
        return self.construction.graph

    @property
    def aut_gens(self) -> list[Permutation]:
        return [self.rho, self.mu, self.sigma]

    @property
    def g1_gens(self) -> list[Permutation]:
        return [self.rho, self.sigma]

    @property
    def g2_gens(self) -> list[Permutation]:
        # sigma*rho: sigma first, then rho
        return [compose(self.rho, self.rho), compose(self.sigma, self.rho), self.mu]


def r12_special_package() -> R12Package:
    """R_12(5,2) with the explicit automorphisms rho, mu, sigma."""
    con = rose_window(12, 5, 2)
    n = 12

    def x(i: int) -> int:
        return i % n

    def y(i: int) -> int:
        return n + i % n

    rho = Permutation.from_cycles(24, [[x(i) for i in range(n)], [y(i) for i in range(n)]])
    mu_img = list(range(24))
    for i in range(n):
        mu_img[x(i)] = x(-i)
        mu_img[y(i)] = y(-i - 5)
    mu = Permutation(mu_img)
    sigma = Permutation.from_cycles(
        24,
        [
            (x(1), y(0)), (x(2), y(10)), (x(4), y(3)), (x(5), y(1)), (x(7), y(6)),
            (x(8), y(4)), (x(10), y(9)), (x(11), y(7)), (y(2), y(8)), (y(5), y(11)),
        ],
    )
    g = con.graph
    for name, s in (("rho", rho), ("mu", mu), ("sigma", sigma)):
        if not preserves_edges(g, s):
            raise AssertionError(f"{name} is not an automorphism of R_12(5,2)")
    return R12Package(con, rho, mu, sigma)


def preserves_edges(g: Graph, s: Permutation) -> bool:
    img = s.images
    return all(g.has_edge(img[u], img[v]) for u, v in g.edges())


# -- Cayley graphs ------------------------------------------------------------------


@dataclass(frozen=True)
class CayleyParams:
    group: PermGroup
    connection: tuple[int, ...]
    bound: int = DEFAULT_ENUM_BOUND


def cayley(group: PermGroup, connection: list[int] | tuple[int, ...], bound: int = DEFAULT_ENUM_BOUND) -> Construction:
    """``Cay(H, S)``: ``h`` adjacent to ``s*h`` (``s`` applied first).

    ``connection`` holds indices into ``group.enumerate_elements(bound)``.
    """
    elements = group.enumerate_elements(bound)
    index = {g.images: k for k, g in enumerate(elements)}
    conn = sorted(set(connection))
    if len(conn) != len(connection):
        raise ParameterError("connection set has repeated entries")
    for k in conn:
        if not 0 <= k < len(elements):
            raise ParameterError(f"connection index {k} out of range")
    conn_set = set(conn)
    for k in conn:
        if elements[k].is_identity():
            raise ParameterError("identity in connection set")
        if index[inverse(elements[k]).images] not in conn_set:
            raise ParameterError("connection set is not closed under inversion")
    edges = set()
    for h_idx, h in enumerate(elements):
        for k in conn:
            other = index[compose(elements[k], h).images]
            edges.add((min(h_idx, other), max(h_idx, other)))
    labels = tuple(f"h{k}" for k in range(len(elements)))
    return Construction(
        from_edges(len(elements), sorted(edges)), labels, "cayley", {"order": len(elements), "connection": conn}
    )


def cayley_from_regular_action(group: PermGroup, g: Graph, base: int = 0) -> Construction:
    """Rebuild ``g`` as a Cayley graph of a regular subgroup of ``Aut(g)``.

    ``S`` is the set of elements carrying ``base`` to one of its neighbors.
    """
    elements = group.enumerate_elements()
    if len(elements) != g.n or len(group.orbit(base)) != g.n:
        raise ParameterError("group does not act regularly")
    nbrs = set(g.neighbors(base))
    conn = [k for k, h in enumerate(elements) if h.images[base] in nbrs]
    return cayley(group, conn)


# -- X_IV(m, n; r, t; p, a; q, b) --------------------------------------------------


@dataclass(frozen=True)
class XivParams:
    m: int
    n: int
    r: int
    t: int
    p: int
    a: int
    q: int
    b: int

    def __post_init__(self) -> None:
        m, n = self.m, self.n
        if m < 5:
            raise ParameterError(f"m must be at least 5, got {m}")
        if n < 3:
            raise ParameterError(f"n must be at least 3, got {n}")
        if not (1 <= self.p < self.q and 2 * self.q < m):
            raise ParameterError("need 1 <= p < q < m/2")
        for name in ("r", "t", "a", "b"):
            if not 0 <= getattr(self, name) < n:
                raise ParameterError(f"{name} must lie in Z_{n}")
        if gcd(gcd(self.p, self.q), m) != 1:
            raise ParameterError("gcd(p, q, m) must be 1")
        if gcd(gcd(self.a, self.b), gcd(self.t, n)) != 1:
            raise ParameterError("gcd(a, b, t, n) must be 1")
        if gcd(self.t, n) == 1:
            raise ParameterError("gcd(t, n) must not be 1")
        if pow(self.r, m, n) != 1 % n:
            raise ParameterError("r^m must be 1 in Z_n")
        if (self.t * (self.r - 1)) % n != 0:
            raise ParameterError("t(r-1) must be 0 in Z_n")


def xiv_edges(pr: XivParams) -> list[tuple[int, int, str]]:
    m, n, r, t, p, a, q, b = pr.m, pr.n, pr.r, pr.t, pr.p, pr.a, pr.q, pr.b
    out = []
    for i in range(m):
        ri = pow(r, i, n)
        tp = t if i >= m - p else 0
        tq = t if i >= m - q else 0
        for j in range(n):
            u = i * n + j
            out.append((u, ((i + p) % m) * n + (j + a * ri + tp) % n, "p"))
            out.append((u, ((i + q) % m) * n + (j + b * ri + tq) % n, "q"))
    return out


def xiv(m: int, n: int, r: int, t: int, p: int, a: int, q: int, b: int) -> Construction:
    pr = XivParams(m, n, r, t, p, a, q, b)
    tagged = xiv_edges(pr)
    g = from_edges(m * n, [(u, v) for u, v, _ in tagged])
    tags = {(min(u, v), max(u, v)): tag for u, v, tag in tagged}
    labels = tuple(f"u_{i}^{j}" for i in range(m) for j in range(n))
    params = {"m": m, "n": n, "r": r, "t": t, "p": p, "a": a, "q": q, "b": b}
    return Construction(g, labels, "xiv", params, tags)
