"""PSL(2, p) arithmetic and the double coset graph Cos(G, <A>, {B, B^-1}).

Matrices are tuples ``(a, b, c, d)`` for ``[[a, b], [c, d]]`` with entries
in ``0..p-1``.  A PSL element is stored as the representative of ``{M, -M}``
whose first nonzero entry (row-major) lies in ``1..(p-1)/2``.

The group acts on row vectors from the right, so ``M`` sends the projective
point ``x`` to ``(a*x + c) / (b*x + d)``.  With that convention the map to
permutations is a homomorphism for left-to-right composition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphcore import Graph, from_edges
from .perm import Permutation, PermGroup

Matrix = tuple[int, int, int, int]

DEFAULT_MAX_PRIME = 31


class Psl2Error(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise Psl2Error(f"{p} is not an odd prime")


def fifth_root(p: int) -> int:
    """Least ``xi`` in ``2..p-1`` with ``xi^5 = 1`` mod ``p``."""
    _check_prime(p)
    if p % 10 != 1:
        raise Psl2Error(f"p = {p} is not 1 mod 10, so Z_p has no primitive fifth root of unity")
    for xi in range(2, p):
        if pow(xi, 5, p) == 1:
            return xi
    raise AssertionError("no fifth root found although 5 | p-1")


# -- raw SL(2, p) arithmetic ---------------------------------------------------------


def mat_mul(x: Matrix, y: Matrix, p: int) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def mat_pow(x: Matrix, k: int, p: int) -> Matrix:
    result: Matrix = (1, 0, 0, 1)
    while k:
        if k & 1:
            result = mat_mul(result, x, p)
        x = mat_mul(x, x, p)
        k >>= 1
    return result


def det(x: Matrix, p: int) -> int:
    return (x[0] * x[3] - x[1] * x[2]) % p


def mat_inv(x: Matrix, p: int) -> Matrix:
    dt = det(x, p)
    if dt == 0:
        raise Psl2Error("singular matrix")
    di = pow(dt, -1, p)
    a, b, c, d = x
    return ((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)


def neg(x: Matrix, p: int) -> Matrix:
    return tuple((-v) % p for v in x)  # type: ignore[return-value]


def is_scalar(x: Matrix) -> bool:
    return x[1] == 0 and x[2] == 0 and x[0] == x[3] and x[0] != 0


def normalize(x: Matrix, p: int) -> Matrix:
    for v in x:
        if v:
            return x if v <= p // 2 else neg(x, p)
    raise Psl2Error("zero matrix")


@dataclass(frozen=True, order=True)
class Psl2Element:
    p: int
    entries: Matrix

    @classmethod
    def of(cls, p: int, a: int, b: int, c: int, d: int) -> "Psl2Element":
        m = (a % p, b % p, c % p, d % p)
        if det(m, p) != 1:
            raise Psl2Error(f"determinant {det(m, p)} != 1")
        return cls(p, normalize(m, p))

    @classmethod
    def identity(cls, p: int) -> "Psl2Element":
        return cls(p, (1, 0, 0, 1))

    def __mul__(self, other: "Psl2Element") -> "Psl2Element":
        return Psl2Element(self.p, normalize(mat_mul(self.entries, other.entries, self.p), self.p))

    def inverse(self) -> "Psl2Element":
        return Psl2Element(self.p, normalize(mat_inv(self.entries, self.p), self.p))

    def __pow__(self, k: int) -> "Psl2Element":
        base = self if k >= 0 else self.inverse()
        return Psl2Element(self.p, normalize(mat_pow(base.entries, abs(k), self.p), self.p))

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)


def element_order(x: Psl2Element) -> int:
    k, y = 1, x
    while not y.is_identity():
        y = y * x
        k += 1
    return k


@dataclass(frozen=True)
class Psl2Params:
    p: int
    xi: int

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if self.p % 10 != 1:
            raise Psl2Error("p must be 1 mod 10")
        if pow(self.xi, 5, self.p) != 1 or self.xi % self.p == 1:
            raise Psl2Error("xi must have multiplicative order 5")

    @classmethod
    def for_prime(cls, p: int) -> "Psl2Params":
        return cls(p, fifth_root(p))


def standard_raw(params: Psl2Params) -> tuple[Matrix, Matrix]:
    """``A = [[0, 1], [-1, 0]]`` and ``B = [[xi, xi + 1/xi], [0, 1/xi]]`` in SL(2, p)."""
    p, xi = params.p, params.xi
    xinv = pow(xi, -1, p)
    return (0, 1, p - 1, 0), (xi, (xi + xinv) % p, 0, xinv)


def standard_generators(params: Psl2Params) -> tuple[Psl2Element, Psl2Element]:
    a, b = standard_raw(params)
    return Psl2Element(params.p, normalize(a, params.p)), Psl2Element(params.p, normalize(b, params.p))


def all_elements(p: int) -> list[Psl2Element]:
    """Every element of PSL(2, p), sorted by normalized entries."""
    _check_prime(p)
    seen = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                if a:
                    d = ((1 + b * c) * pow(a, -1, p)) % p
                    seen.add(normalize((a, b, c, d), p))
                elif b and (b * c) % p == p - 1:
                    for d in range(p):
                        seen.add(normalize((a, b, c, d), p))
    return [Psl2Element(p, m) for m in sorted(seen)]


def projective_image(x: Matrix, point: int, p: int) -> int:
    """Image of a projective point (``p`` stands for infinity) under row action."""
    a, b, c, d = x
    if point == p:
        num, den = a, b
    else:
        num, den = (a * point + c) % p, (b * point + d) % p
    if den == 0:
        return p
    return (num * pow(den, -1, p)) % p


def as_projective_permutation(x: Psl2Element | Matrix, p: int | None = None) -> Permutation:
    if isinstance(x, Psl2Element):
        p, m = x.p, x.entries
    else:
        if p is None:
            raise Psl2Error("prime needed for a raw matrix")
        m = x
    return Permutation(tuple(projective_image(m, i, p) for i in range(p + 1)))


# -- the double coset graph -----------------------------------------------------------


@dataclass(frozen=True)
class CosetGraph:
    """``Cos(G, H, {B, B^-1})`` with ``G = PSL(2,p)`` and ``H = <A>``.

    Vertices are right cosets ``Hg = {g, Ag}`` numbered by their least
    member; ``group`` is right multiplication by ``A`` and ``B``.
    """

    p: int
    xi: int
    graph: Graph
    group: PermGroup
    a_perm: Permutation
    b_perm: Permutation
    elements: tuple[Psl2Element, ...]
    coset_of: dict[Matrix, int]
    reps: tuple[Matrix, ...]

    @property
    def identity_vertex(self) -> int:
        return self.coset_of[(1, 0, 0, 1)]

    def vertex_of(self, x: Matrix) -> int:
        return self.coset_of[normalize(x, self.p)]

    def right_multiplication(self, x: Matrix) -> Permutation:
        p = self.p
        return Permutation(tuple(self.coset_of[normalize(mat_mul(g, x, p), p)] for g in self.reps))


def coset_graph(p: int, max_prime: int = DEFAULT_MAX_PRIME) -> CosetGraph:
    if p > max_prime:
        raise Psl2Error(f"p = {p} exceeds the configured bound {max_prime}")
    params = Psl2Params.for_prime(p)
    a_raw, b_raw = standard_raw(params)
    elements = all_elements(p)
    order = p * (p * p - 1) // 2
    if len(elements) != order:
        raise AssertionError(f"enumerated {len(elements)} elements, expected {order}")
    coset_of: dict[Matrix, int] = {}
    reps: list[Matrix] = []
    for el in elements:
        g = el.entries
        if g in coset_of:
            continue
        other = normalize(mat_mul(a_raw, g, p), p)
        coset_of[g] = coset_of[other] = len(reps)
        reps.append(g)
    b_inv = mat_inv(b_raw, p)
    edges = set()
    for v, g in enumerate(reps):
        for s in (b_raw, b_inv):
            for h in ((1, 0, 0, 1), a_raw):
                w = coset_of[normalize(mat_mul(mat_mul(s, h, p), g, p), p)]
                if w != v:
                    edges.add((min(v, w), max(v, w)))
    graph = from_edges(len(reps), sorted(edges))
    if not graph.is_regular(4):
        raise AssertionError("coset graph is not tetravalent")

    def right_mult(x: Matrix) -> Permutation:
        return Permutation(tuple(coset_of[normalize(mat_mul(g, x, p), p)] for g in reps))

    a_perm, b_perm = right_mult(a_raw), right_mult(b_raw)
    try:
        group = PermGroup([a_perm, b_perm], known_order=order)
    except ValueError as exc:
        raise AssertionError(f"<A, B> is not all of PSL(2,{p}): {exc}") from None
    return CosetGraph(p, params.xi, graph, group, a_perm, b_perm, tuple(elements), coset_of, tuple(reps))


@dataclass(frozen=True)
class ArcReversal:
    matrix: Matrix
    permutation: Permutation
    c_involution: bool
    ac_involution: bool
    bc_involution: bool


def arc_reversing_matrix(p: int) -> Matrix:
    """``C = [[1, k], [k, -1]]`` with ``k = -1 - 2 xi - 2 xi^2``."""
    xi = fifth_root(p)
    k = (-1 - 2 * xi - 2 * xi * xi) % p
    c = (1, k, k, p - 1)
    if det(c, p) == 0:
        raise Psl2Error("C is singular: -2 + 4 xi^2 + 4 xi^3 = 0, inconsistent with xi of order 5")
    return c


def arc_reversing_witness(cg: CosetGraph) -> ArcReversal:
    """Conjugation by ``C`` as a permutation of the cosets, plus involution checks."""
    p = cg.p
    c = arc_reversing_matrix(p)
    c_inv = mat_inv(c, p)
    a_raw, b_raw = standard_raw(Psl2Params(p, cg.xi))
    images = []
    for g in cg.reps:
        conj = mat_mul(mat_mul(c_inv, g, p), c, p)
        if det(conj, p) != 1:
            raise AssertionError("conjugate left SL(2, p)")
        images.append(cg.coset_of[normalize(conj, p)])
    return ArcReversal(
        matrix=c,
        permutation=Permutation(tuple(images)),
        c_involution=is_scalar(mat_mul(c, c, p)),
        ac_involution=is_scalar(mat_pow(mat_mul(a_raw, c, p), 2, p)),
        bc_involution=is_scalar(mat_pow(mat_mul(b_raw, c, p), 2, p)),
    )
