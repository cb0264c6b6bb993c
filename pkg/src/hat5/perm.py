"""Permutations and permutation groups.

Points are ``0..n-1``.  Products are read left to right: ``compose(p, q)``
applies ``p`` first and then ``q``, so ``i`` goes to ``q[p[i]]``.  This matches
the exponential notation ``v^(pq) = (v^p)^q`` used for group actions on graphs.

Groups carry a deterministic Schreier-Sims stabilizer chain, built once at
construction.  Coset representatives are stored as Schreier trees (a parent
pointer plus a generator label per orbit point) rather than as explicit
permutations, which keeps memory linear in the orbit size for large degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import itemgetter
from typing import Iterable, Iterator, Sequence


class PermError(ValueError):
    """Malformed permutation, group or constraint."""


class DegreeMismatch(PermError):
    pass


class GroupTooLarge(PermError):
    """Refusal to enumerate a group whose order exceeds the requested bound."""


DEFAULT_ENUM_BOUND = 10**6


def _apply_all(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # q[p[0]], q[p[1]], ... computed at C speed
    if len(p) == 1:
        return (q[p[0]],)
    return itemgetter(*p)(q)


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.images, tuple):
            object.__setattr__(self, "images", tuple(self.images))
        n = len(self.images)
        if n == 0:
            raise PermError("degree must be positive")
        if sorted(self.images) != list(range(n)):
            raise PermError("images do not form a bijection on 0..n-1")

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n <= 0:
            raise PermError("degree must be positive")
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if not 0 <= x < n or x in seen:
                    raise PermError(f"bad cycle entry {x}")
                seen.add(x)
                images[x] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        from math import lcm

        result = 1
        seen = [False] * self.degree
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            result = lcm(result, length)
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        out = []
        seen = [False] * self.degree
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{self.degree}>{body}"


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    return Permutation._trusted(_apply_all(p.images, q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


@dataclass(frozen=True)
class PointTupleConstraint:
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.sources) != len(self.targets):
            raise PermError("sources and targets differ in length")
        if len(set(self.sources)) != len(self.sources) or len(set(self.targets)) != len(
            self.targets
        ):
            raise PermError("constraint points must be distinct")


class _Level:
    """One level of a stabilizer chain: base point, generators, Schreier tree."""

    __slots__ = ("base", "gens", "inv_gens", "parent", "label")

    def __init__(self, base: int, gens: Sequence[tuple[int, ...]] = ()):
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        self.inv_gens: list[tuple[int, ...]] = []
        # parent[x] = y and label[x] = k mean x = y^gens[k]
        self.parent: dict[int, int] = {base: base}
        self.label: dict[int, int] = {base: -1}
        for g in gens:
            self.add_gen(g)

    def add_gen(self, g: tuple[int, ...]) -> None:
        k = len(self.gens)
        self.gens.append(g)
        inv = [0] * len(g)
        for i, x in enumerate(g):
            inv[x] = i
        self.inv_gens.append(tuple(inv))
        frontier = []
        for y in list(self.parent):
            x = g[y]
            if x not in self.parent:
                self.parent[x] = y
                self.label[x] = k
                frontier.append(x)
        while frontier:
            nxt = []
            for y in frontier:
                for j, h in enumerate(self.gens):
                    x = h[y]
                    if x not in self.parent:
                        self.parent[x] = y
                        self.label[x] = j
                        nxt.append(x)
            frontier = nxt

    def to_base(self, x: int, degree: int) -> tuple[int, ...] | None:
        """A group element mapping ``x`` to the base point, or None off-orbit."""
        if x not in self.parent:
            return None
        result = tuple(range(degree))
        while x != self.base:
            result = _apply_all(result, self.inv_gens[self.label[x]])
            x = self.parent[x]
        return result

    def from_base(self, x: int, degree: int) -> tuple[int, ...]:
        """The transversal element mapping the base point to ``x``."""
        word = []
        while x != self.base:
            word.append(self.label[x])
            x = self.parent[x]
        result = tuple(range(degree))
        for k in reversed(word):
            result = _apply_all(result, self.gens[k])
        return result


def _first_moved(g: tuple[int, ...]) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise AssertionError("identity has no moved point")


def _sift(levels: list[_Level], g: tuple[int, ...], degree: int, start: int = 0):
    """Strip ``g`` through ``levels[start:]``; return (residue, drop level)."""
    for i in range(start, len(levels)):
        lvl = levels[i]
        u = lvl.to_base(g[lvl.base], degree)
        if u is None:
            return g, i
        g = _apply_all(g, u)
    return g, len(levels)


def _schreier_sims(
    degree: int,
    gens: Sequence[tuple[int, ...]],
    prefix: Sequence[int] = (),
    known_order: int | None = None,
) -> list[_Level]:
    """Deterministic Schreier-Sims.

    ``prefix`` points become the first base points (possibly with trivial
    orbits); further base points are the least point moved by the generator
    that forces a new level.  A partial chain never reports more than the
    true order, so reaching ``known_order`` proves the chain complete.
    """
    ident = tuple(range(degree))
    strong: list[tuple[int, ...]] = []
    for g in gens:
        if g != ident and g not in strong:
            strong.append(g)
    if not strong:
        return []
    base = list(prefix)
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    levels = [
        _Level(base[k], [g for g in strong if all(g[b] == b for b in base[:k])])
        for k in range(len(base))
    ]
    def chain_order() -> int:
        total = 1
        for lv in levels:
            total *= len(lv.parent)
        return total

    i = len(levels) - 1
    while i >= 0:
        if known_order is not None and chain_order() == known_order:
            break
        lvl = levels[i]
        residue = None
        for x in sorted(lvl.parent):
            ux = lvl.from_base(x, degree)
            for s in list(lvl.gens):
                # Schreier generator  u_x * s * u_{x^s}^{-1}
                sg = _apply_all(_apply_all(ux, s), lvl.to_base(s[x], degree))  # type: ignore[arg-type]
                if sg == ident:
                    continue
                h, j = _sift(levels, sg, degree, i + 1)
                if h != ident:
                    residue = (h, j)
                    break
            if residue:
                break
        if residue is None:
            i -= 1
            continue
        h, j = residue
        if j == len(levels):
            levels.append(_Level(_first_moved(h)))
        for k in range(i + 1, j + 1):
            levels[k].add_gen(h)
        i = j
    return levels


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain.

    The chain comes from deterministic Schreier-Sims, so identical generator
    lists always give identical chains (and identical reports downstream).
    """

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: int | None = None,
        base_prefix: Sequence[int] = (),
        known_order: int | None = None,
    ):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise PermError("need a degree or at least one generator")
            degree = gens[0].degree
        if degree <= 0:
            raise PermError("degree must be positive")
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        for pt in base_prefix:
            if not 0 <= pt < degree:
                raise PermError(f"base point {pt} out of range")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens) if gens else (identity(degree),)
        self._levels = _schreier_sims(degree, [g.images for g in self.generators], base_prefix, known_order)
        if known_order is not None and self.order() != known_order:
            raise PermError(f"group order {self.order()} differs from the stated {known_order}")

    def _rebased(self, prefix: Sequence[int]) -> "PermGroup":
        prefix = tuple(prefix)
        if self.base[: len(prefix)] == prefix:
            return self
        new = PermGroup.__new__(PermGroup)
        new.degree = self.degree
        new.generators = self.generators
        new._levels = _schreier_sims(
            self.degree, [g.images for g in self.strong_generators()], prefix, self.order()
        )
        return new

    # -- queries -------------------------------------------------------------

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.base for lvl in self._levels)

    def strong_generators(self) -> list[Permutation]:
        seen: list[tuple[int, ...]] = []
        for lvl in self._levels:
            for g in lvl.gens:
                if g not in seen:
                    seen.append(g)
        return [Permutation._trusted(g) for g in seen]

    def transversal_sizes(self) -> list[int]:
        return [len(lvl.parent) for lvl in self._levels]

    def order(self) -> int:
        result = 1
        for lvl in self._levels:
            result *= len(lvl.parent)
        return result

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch("degree mismatch in membership test")
        h, _ = _sift(self._levels, g.images, self.degree)
        return h == tuple(range(self.degree))

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self._levels

    def orbit(self, point: int) -> list[int]:
        _check_point(self, point)
        seen = {point}
        stack = [point]
        gens = [g.images for g in self.generators]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        done = [False] * self.degree
        out = []
        for p in range(self.degree):
            if not done[p]:
                orb = self.orbit(p)
                for x in orb:
                    done[x] = True
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        _check_point(self, point)
        chain = self._rebased([point])
        gens = []
        for lvl in chain._levels[1:]:
            for g in lvl.gens:
                if g not in gens:
                    gens.append(g)
        return PermGroup([Permutation._trusted(g) for g in gens], degree=self.degree)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(points)
        for pt in points:
            _check_point(self, pt)
        if not points:
            return self
        chain = self._rebased(points)
        gens = []
        for lvl in chain._levels[len(points):]:
            for g in lvl.gens:
                if g not in gens:
                    gens.append(g)
        return PermGroup([Permutation._trusted(g) for g in gens], degree=self.degree)

    def find_element(self, constraint: PointTupleConstraint) -> Permutation | None:
        """An element mapping ``sources`` onto ``targets`` pointwise, or None.

        With the sources as leading base points every choice of coset
        representative is forced, so the walk down the chain never backtracks;
        the result is the element whose deeper chain factors are all trivial.
        """
        src, dst = constraint.sources, constraint.targets
        for x in src + dst:
            _check_point(self, x)
        n = self.degree
        if not src:
            return identity(n)
        chain = self._rebased(src)
        levels = chain._levels
        # invariant: g = suffix, and src[:i]^suffix == dst[:i]
        suffix = tuple(range(n))
        suffix_inv = suffix
        for i, pt in enumerate(src):
            want = suffix_inv[dst[i]]
            if i >= len(levels):
                if want != pt:
                    return None
                continue
            lvl = levels[i]
            if want not in lvl.parent:
                return None
            u = lvl.from_base(want, n)
            u_inv = lvl.to_base(want, n)
            suffix = _apply_all(u, suffix)
            suffix_inv = _apply_all(suffix_inv, u_inv)  # type: ignore[arg-type]
        g = Permutation._trusted(suffix)
        assert all(g.images[s] == t for s, t in zip(src, dst))
        return g

    def elements(self) -> Iterator[Permutation]:
        """All elements, each exactly once, in chain order."""
        n = self.degree
        reps = [[lvl.from_base(x, n) for x in sorted(lvl.parent)] for lvl in self._levels]

        def rec(i: int, acc: tuple[int, ...]) -> Iterator[Permutation]:
            if i < 0:
                yield Permutation._trusted(acc)
                return
            for u in reps[i]:
                yield from rec(i - 1, _apply_all(acc, u))

        yield from rec(len(reps) - 1, tuple(range(n)))

    def enumerate_elements(self, bound: int = DEFAULT_ENUM_BOUND) -> list[Permutation]:
        """All elements, sorted lexicographically by image sequence."""
        order = self.order()
        if order > bound:
            raise GroupTooLarge(f"group of order {order} exceeds enumeration bound {bound}")
        return sorted(self.elements(), key=lambda g: g.images)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.order()))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self.generators)})"

    # -- derived series --------------------------------------------------------

    def normal_closure(self, elements: Sequence[Permutation]) -> "PermGroup":
        """Smallest normal subgroup of ``self`` containing ``elements``."""
        gens = [g for g in elements if not g.is_identity()]
        closure = PermGroup(gens, degree=self.degree)
        queue = list(gens)
        while queue:
            x = queue.pop()
            for s in self.generators:
                c = compose(compose(inverse(s), x), s)
                if not closure.contains(c):
                    gens.append(c)
                    closure = PermGroup(gens, degree=self.degree)
                    queue.append(c)
        return closure

    def derived_subgroup(self) -> "PermGroup":
        comms = []
        for a in self.generators:
            for b in self.generators:
                c = compose(compose(inverse(a), inverse(b)), compose(a, b))
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def is_solvable(self) -> bool:
        group = self
        while not group.is_trivial():
            nxt = group.derived_subgroup()
            if nxt.order() == group.order():
                return False
            group = nxt
        return True


def _check_point(group: PermGroup, point: int) -> None:
    if not 0 <= point < group.degree:
        raise PermError(f"point {point} out of range for degree {group.degree}")


def closure_elements(generators: Sequence[Permutation], bound: int = DEFAULT_ENUM_BOUND) -> list[Permutation]:
    """All elements of the generated group by breadth-first closure.

    Independent of the stabilizer chain; used to cross-check it.
    """
    if not generators:
        raise PermError("need at least one generator")
    n = generators[0].degree
    start = tuple(range(n))
    seen = {start}
    frontier = [start]
    gens = [g.images for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _apply_all(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        raise GroupTooLarge(f"closure exceeded {bound} elements")
                    nxt.append(y)
        frontier = nxt
    return [Permutation._trusted(x) for x in sorted(seen)]


# -- HATPERMS v1 --------------------------------------------------------------

PERMS_HEADER = "HATPERMS v1"


def dumps_perms(perms: Sequence[Permutation], degree: int | None = None) -> str:
    if degree is None:
        if not perms:
            raise PermError("empty permutation list needs an explicit degree")
        degree = perms[0].degree
    lines = [PERMS_HEADER, str(degree)]
    for p in perms:
        if p.degree != degree:
            raise DegreeMismatch("mixed degrees in permutation file")
        lines.append(" ".join(map(str, p.images)))
    return "\n".join(lines) + "\n"


def loads_perms(text: str) -> tuple[int, list[Permutation]]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != PERMS_HEADER:
        raise PermError(f"missing {PERMS_HEADER!r} header")
    if len(lines) < 2:
        raise PermError("missing degree line")
    try:
        degree = int(lines[1])
    except ValueError:
        raise PermError(f"bad degree line {lines[1]!r}") from None
    perms = []
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        try:
            images = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise PermError(f"line {lineno}: non-integer image") from None
        if len(images) != degree:
            raise PermError(f"line {lineno}: expected {degree} images, got {len(images)}")
        perms.append(Permutation(images))
    return degree, perms
