import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hat5 import psl2
from hat5.perm import (
    DegreeMismatch,
    Permutation,
    PermError,
    PermGroup,
    PointTupleConstraint,
    closure_elements,
    compose,
    dumps_perms,
    identity,
    inverse,
    loads_perms,
    power,
)

C5 = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
S3 = PermGroup([Permutation.from_cycles(3, [(0, 1)]), Permutation.from_cycles(3, [(0, 1, 2)])])


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


@st.composite
def small_groups(draw):
    n = draw(st.integers(2, 7))
    gens = draw(st.lists(perms(n), min_size=1, max_size=3))
    return PermGroup(gens, degree=n)


# -- compose / inverse -------------------------------------------------------------


def test_compose_identity():
    assert compose(identity(5), identity(5)) == identity(5)


def test_compose_three_cycle_squares():
    p = Permutation.from_cycles(3, [(0, 1, 2)])
    assert compose(p, p) == Permutation.from_cycles(3, [(0, 2, 1)])


def test_compose_is_left_to_right():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    # 0 -p-> 1 -q-> 2
    assert compose(p, q).images[0] == 2


def test_inverse_round_trip_random_degree_24():
    rng = random.Random(7)
    for _ in range(100):
        imgs = list(range(24))
        rng.shuffle(imgs)
        p = Permutation(imgs)
        assert compose(p, inverse(p)) == identity(24)
        assert compose(inverse(p), p) == identity(24)


@given(perms(9))
def test_inverse_round_trip_property(p):
    assert compose(p, inverse(p)).is_identity()


@given(perms(6), perms(6), perms(6))
def test_compose_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(perms(8), st.integers(-5, 12))
def test_power_matches_repeated_compose(p, k):
    want = identity(8)
    step = p if k >= 0 else inverse(p)
    for _ in range(abs(k)):
        want = compose(want, step)
    assert power(p, k) == want


def test_bad_images_rejected():
    with pytest.raises(PermError):
        Permutation((0, 0, 1))


def test_order_of_permutation():
    assert C5.order() == 5
    assert Permutation.from_cycles(6, [(0, 1), (2, 3, 4)]).order() == 6


# -- group queries -------------------------------------------------------------------


def test_orbit_trivial_group():
    assert PermGroup([], degree=5).orbit(3) == [3]


def test_orbit_single_cycle():
    assert sorted(PermGroup([C5]).orbit(0)) == [0, 1, 2, 3, 4]


def test_orbit_g1_on_r12(r12_groups):
    for v in (0, 5, 13):
        assert sorted(r12_groups["g1"].orbit(v)) == list(range(24))


def test_order_s3():
    assert S3.order() == 6


def test_order_r12_aut(r12_groups):
    assert r12_groups["aut"].order() == 96


def test_order_psl2_11_projective():
    a, b = psl2.standard_generators(psl2.Psl2Params.for_prime(11))
    g = PermGroup([psl2.as_projective_permutation(a), psl2.as_projective_permutation(b)])
    assert g.order() == 11 * (11 * 11 - 1) // 2


def test_stabilizer_regular_cyclic_is_trivial():
    assert PermGroup([C5]).stabilizer(0).order() == 1


def test_stabilizer_g1_order_two(r12_groups):
    for v in range(24):
        assert r12_groups["g1"].stabilizer(v).order() == 2


def test_stabilizer_aut_order_four(r12_groups):
    aut = r12_groups["aut"]
    assert aut.stabilizer(0).order() == 4 == aut.order() // len(aut.orbit(0))


def test_find_element_fixed_singleton():
    g = PermGroup([Permutation.from_cycles(4, [(1, 2, 3)])])
    s = g.find_element(PointTupleConstraint((0,), (0,)))
    assert s is not None and s.images[0] == 0


def test_find_element_no_arc_reversal_in_g1(r12, r12_groups):
    g1 = r12_groups["g1"]
    for u, v in r12.graph.arcs():
        assert g1.find_element(PointTupleConstraint((u, v), (v, u))) is None


def test_find_element_rotation_shunt():
    s = PermGroup([C5]).find_element(PointTupleConstraint((0, 1), (1, 2)))
    assert s == C5


def test_find_element_unsatisfiable_pair():
    assert PermGroup([C5]).find_element(PointTupleConstraint((0, 1), (1, 3))) is None


def test_enumerate_trivial_group():
    assert PermGroup([], degree=4).enumerate_elements() == [identity(4)]


def test_enumerate_s3():
    els = S3.enumerate_elements()
    assert len(els) == 6 == len(set(els))


def test_enumerate_g1_on_r12(r12_groups):
    g1 = r12_groups["g1"]
    els = g1.enumerate_elements()
    # independent oracle: plain closure under the generators
    assert len(els) == 48 == len(closure_elements(list(g1.generators)))


def test_membership():
    assert Permutation.from_cycles(3, [(1, 2)]) in S3
    assert Permutation.from_cycles(4, [(0, 1)]) not in PermGroup([Permutation.from_cycles(4, [(0, 1, 2, 3)])])


def test_g1_differs_from_g2(r12, r12_groups):
    assert r12_groups["g1"] != r12_groups["g2"]
    assert r12.sigma not in r12_groups["g2"]


def test_solvability():
    assert S3.is_solvable()
    a5 = PermGroup([Permutation.from_cycles(5, [(0, 1, 2)]), Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])])
    assert a5.order() == 60 and not a5.is_solvable()


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        PermGroup([identity(3), identity(4)])


def test_known_order_is_checked():
    with pytest.raises(PermError):
        PermGroup([C5], known_order=10)


def test_chain_is_deterministic():
    a = PermGroup([C5, Permutation.from_cycles(5, [(1, 4), (2, 3)])])
    b = PermGroup([C5, Permutation.from_cycles(5, [(1, 4), (2, 3)])])
    assert a.base == b.base and a.transversal_sizes() == b.transversal_sizes()


# -- properties ----------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(small_groups())
def test_order_matches_enumeration(g):
    els = g.enumerate_elements()
    assert len(els) == g.order() == len(set(els))
    assert len(closure_elements(list(g.generators))) == g.order()


@settings(max_examples=60, deadline=None)
@given(small_groups(), st.data())
def test_orbit_stabilizer(g, data):
    pt = data.draw(st.integers(0, g.degree - 1))
    assert len(g.orbit(pt)) * g.stabilizer(pt).order() == g.order()


@settings(max_examples=40, deadline=None)
@given(small_groups(), st.data())
def test_products_of_generators_sift(g, data):
    word = data.draw(st.lists(st.sampled_from(g.generators), min_size=1, max_size=5))
    x = word[0]
    for y in word[1:]:
        x = compose(x, y)
    assert x in g


@settings(max_examples=60, deadline=None)
@given(small_groups(), st.data())
def test_find_element_sound_and_complete(g, data):
    n = g.degree
    k = data.draw(st.integers(1, min(3, n)))
    src = tuple(data.draw(st.permutations(list(range(n))))[:k])
    dst = tuple(data.draw(st.permutations(list(range(n))))[:k])
    found = g.find_element(PointTupleConstraint(src, dst))
    brute = [e for e in g.enumerate_elements() if all(e.images[s] == t for s, t in zip(src, dst))]
    if found is None:
        assert brute == []
    else:
        assert found in g
        assert all(found.images[s] == t for s, t in zip(src, dst))


def test_find_element_complete_on_s4():
    s4 = PermGroup([Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(0, 1, 2, 3)])])
    for src in itertools.permutations(range(4), 2):
        for dst in itertools.permutations(range(4), 2):
            assert s4.find_element(PointTupleConstraint(src, dst)) is not None


# -- HATPERMS v1 ---------------------------------------------------------------------


def test_perms_round_trip_byte_exact(r12):
    text = dumps_perms(r12.aut_gens, 24)
    degree, back = loads_perms(text)
    assert degree == 24 and back == r12.aut_gens
    assert dumps_perms(back, degree) == text


def test_perms_format():
    assert dumps_perms([C5]) == "HATPERMS v1\n5\n1 2 3 4 0\n"


@pytest.mark.parametrize(
    "text",
    ["HATPERM v1\n3\n0 1 2\n", "HATPERMS v1\nx\n", "HATPERMS v1\n3\n0 1\n", "HATPERMS v1\n3\n0 0 1\n"],
)
def test_perms_parse_errors(text):
    with pytest.raises(PermError):
        loads_perms(text)
