import itertools

import pytest

from hat5 import families
from hat5.graphcore import from_edges
from hat5.hatcore import (
    ActionError,
    InvariantViolation,
    NotTetravalent,
    alternating_cycles,
    arc_orbit,
    check_action,
    default_seed_arc,
    induced_orientation,
    is_invariant,
    no_adjacent_swap,
    orientation_from_arcs,
    require_tetravalent,
    transitivity,
)
from hat5.perm import DegreeMismatch, Permutation, PermGroup


def alternation_oracle(o, cycle):
    """Consecutive edges of the cycle point in opposite directions."""
    k = len(cycle)
    dirs = [(cycle[i], cycle[(i + 1) % k]) in o.arcs for i in range(k)]
    return all(dirs[i] != dirs[(i + 1) % k] for i in range(k))


def test_identity_group_acts():
    g = families.xo(3, 9, 4).graph
    assert check_action(PermGroup([], degree=g.n), g)


def test_r12_aut_acts(r12, r12_groups):
    assert check_action(r12_groups["aut"], r12.graph)


def test_transposition_is_not_an_automorphism():
    g = families.xo(3, 9, 4).graph
    swap = Permutation.from_cycles(g.n, [(0, 1)])
    assert not check_action(PermGroup([swap]), g)
    with pytest.raises(ActionError):
        transitivity(PermGroup([swap]), g)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        check_action(PermGroup([], degree=5), families.xo(3, 9, 4).graph)


def test_g1_half_arc_transitive(r12, r12_groups):
    rep = transitivity(r12_groups["g1"], r12.graph)
    assert rep.half_arc_transitive and rep.vertex_stabilizer_order == 2


def test_r12_aut_arc_transitive(r12, r12_groups):
    rep = transitivity(r12_groups["aut"], r12.graph)
    assert rep.arc_transitive and not rep.half_arc_transitive
    assert arc_orbit(r12_groups["aut"], (0, 1)) == set(r12.graph.arcs())


def test_psl_half_arc_transitive(psl11):
    assert transitivity(psl11.group, psl11.graph).half_arc_transitive


def test_report_json_keys(r12, r12_groups):
    keys = set(transitivity(r12_groups["g1"], r12.graph).to_json())
    assert {"vertex_transitive", "edge_transitive", "arc_transitive", "stabilizer_order"} <= keys


def test_xo55_orientation_goes_up_a_layer(xo55):
    g, group = xo55
    o = induced_orientation(group, g, (0, 12))  # u_0^0 -> u_1^1
    assert o.arcs == frozenset(families.xo_orientation(5, 11, 3))
    assert all((v // 11 - u // 11) % 5 == 1 for u, v in o.arcs)


def test_orientation_balanced(xo55, r12, r12_groups, psl11):
    cases = [xo55, (r12.graph, r12_groups["g1"]), (r12.graph, r12_groups["g2"]), (psl11.graph, psl11.group)]
    for g, group in cases:
        assert induced_orientation(group, g).is_balanced()


def test_reversed_seed_gives_paired_orientation(r12, r12_groups):
    g, g1 = r12.graph, r12_groups["g1"]
    u, v = default_seed_arc(g)
    o = induced_orientation(g1, g, (u, v))
    assert induced_orientation(g1, g, (v, u)) == o.reversed()


def test_orientation_is_invariant(r12, r12_groups):
    o = induced_orientation(r12_groups["g2"], r12.graph)
    assert is_invariant(r12_groups["g2"], o)
    assert not is_invariant(r12_groups["aut"], o)


def test_arc_transitive_action_has_no_orientation(r12, r12_groups):
    with pytest.raises(ActionError):
        induced_orientation(r12_groups["aut"], r12.graph)


def test_seed_must_be_an_arc(xo55):
    g, group = xo55
    with pytest.raises(ActionError):
        induced_orientation(group, g, (0, 11))


def test_no_adjacent_swap(r12, r12_groups, psl11):
    assert no_adjacent_swap(r12_groups["g1"], r12.graph)
    assert not no_adjacent_swap(r12_groups["aut"], r12.graph)
    assert no_adjacent_swap(psl11.group, psl11.graph)


def test_xo55_tightly_attached(xo55):
    g, group = xo55
    rep = alternating_cycles(induced_orientation(group, g))
    assert (rep.radius, rep.attachment, rep.tightly_attached) == (11, 11, True)


def test_doyle_holt_tightly_attached(doyle_holt):
    # the radius of X_o(m, r; q) is r
    g, aut = doyle_holt
    rep = alternating_cycles(induced_orientation(aut, g))
    assert (rep.radius, rep.attachment, rep.tightly_attached) == (9, 9, True)
    assert len(rep.cycles) == 3


def test_psl_alternating_cycles_not_squares(psl11):
    rep = alternating_cycles(induced_orientation(psl11.group, psl11.graph))
    assert rep.radius != 2


@pytest.mark.parametrize("which, radius, attachment", [("g1", 4, 2), ("g2", 6, 4)])
def test_r12_alternating_parameters(r12, r12_groups, which, radius, attachment):
    rep = alternating_cycles(induced_orientation(r12_groups[which], r12.graph))
    assert (rep.radius, rep.attachment) == (radius, attachment)
    assert not rep.tightly_attached


def test_alternating_cycles_partition_edges(r12, r12_groups, psl11):
    for g, group in ((r12.graph, r12_groups["g1"]), (psl11.graph, psl11.group)):
        o = induced_orientation(group, g)
        rep = alternating_cycles(o)
        seen = []
        for c in rep.cycles:
            assert alternation_oracle(o, c)
            assert len(set(c)) == len(c) == 2 * rep.radius
            seen += [frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))]
        assert sorted(map(sorted, seen)) == sorted(map(list, g.edges()))


def test_attachment_matches_pairwise_oracle(r12, r12_groups):
    o = induced_orientation(r12_groups["g2"], r12.graph)
    rep = alternating_cycles(o)
    sizes = {len(set(a) & set(b)) for a, b in itertools.combinations(rep.cycles, 2)} - {0}
    assert sizes == {rep.attachment}


def test_unbalanced_orientation_rejected():
    g = families.rose_window(6, 1, 2).graph
    # every edge from smaller to larger vertex: vertex 0 has out-degree 4
    o = orientation_from_arcs(g, g.edges())
    with pytest.raises(InvariantViolation):
        alternating_cycles(o)


def _twisted_xo55():
    """The X_o(5,11;3) orientation with one directed 5-cycle reversed.

    Still 2-in/2-out everywhere, but induced by no group.
    """
    g = families.xo(5, 11, 3).graph
    arcs = set(families.xo_orientation(5, 11, 3))
    cyc = (0, 12, 26, 35, 51)
    rim = {(cyc[i], cyc[(i + 1) % 5]) for i in range(5)}
    assert rim <= arcs
    return orientation_from_arcs(g, (arcs - rim) | {(b, a) for a, b in rim})


def test_non_induced_orientation_detected():
    o = _twisted_xo55()
    assert o.is_balanced()
    with pytest.raises(InvariantViolation):
        alternating_cycles(o)


def test_orientation_must_cover_edges():
    g = from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ActionError):
        orientation_from_arcs(g, [(0, 1), (1, 0), (1, 2)])


def test_require_tetravalent():
    with pytest.raises(NotTetravalent):
        require_tetravalent(from_edges(5, [(i, (i + 1) % 5) for i in range(5)]))
