import json
import random
from math import gcd

import pytest

from hat5.autsearch import is_half_arc_transitive_graph
from hat5.families import ParameterError, xiv
from hat5.graphcore import cycles_of_length, cycles_through_edge_counts, girth
from hat5.verify import (
    TABLE_ROWS,
    VerifyError,
    run_named,
    ta_search,
    verify_table_row,
    verify_ta,
    verify_undirected_classification,
    verify_xiv_nonexistence,
    xiv_parameter_sweep,
)
from hat5.verify import _root_edge_five_cycles, _scaling_minimal, _short_cycle


def ta_oracle(m, bound):
    out = set()
    for r in range(3, bound + 1, 2):
        for q in range(r):
            if q in (1, r - 1) or pow(q, m, r) != 1:
                continue
            if m == 3:
                hits = any((3 + s1 * q + s2 * q * q) % r == 0 for s1 in (1, -1) for s2 in (1, -1))
            else:
                hits = any(
                    (1 + s1 * q + s2 * q**2 + s3 * q**3 + s4 * q**4) % r == 0
                    for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1) for s4 in (1, -1)
                )
            if hits:
                out.add((r, q))
    return out


def test_ta_m3_exact():
    res = ta_search(3, 1000)
    assert res.pairs() == [(9, 4), (9, 7)]
    assert set(res.pairs()) == ta_oracle(3, 1000)


def test_ta_m5_at_eleven():
    res = ta_search(5, 11)
    assert {q for r, q in res.pairs() if r == 11} == {3, 4, 5, 9}
    assert (1 + 3 + 9 + 27 + 81) % 11 == 0


def test_ta_m5_reaches_121():
    res = ta_search(5, 121)
    assert any(r == 121 for r, _ in res.pairs())
    assert set(res.pairs()) == ta_oracle(5, 121)
    for s in res.solutions:
        assert s.all_plus
        assert sum(pow(s.q, k, s.r) for k in range(5)) % s.r == 0
        assert s.q not in (1, s.r - 1)


def test_ta_unsupported_m():
    with pytest.raises(VerifyError):
        ta_search(4, 100)
    with pytest.raises(VerifyError):
        ta_search(3, 10**7)


def test_verify_ta_reports():
    rep = verify_ta(3, 1000)
    assert rep.passed
    assert "r <= 1000" in rep.scope
    assert verify_ta(5, 121).passed


def test_undirected_classification():
    rep = verify_undirected_classification()
    assert rep.passed, [a for a in rep.assertions if not a.passed]
    names = {a.name for a in rep.assertions}
    assert "G1 != G2" in names


def test_table_row_hat55():
    rep = verify_table_row("HAT[55,1]")
    assert rep.passed, [a.to_json() for a in rep.assertions if not a.passed]


def test_table_row_psl11():
    rep = verify_table_row("PSL2-11")
    assert rep.passed, [a.to_json() for a in rep.assertions if not a.passed]
    assert rep.data["aut_order"] == 2640


def test_table_rows_have_provenance():
    for e in TABLE_ROWS.values():
        assert e.provenance
    with pytest.raises(VerifyError):
        verify_table_row("HAT[880,1]")


def test_report_json_is_deterministic():
    a, b = verify_ta(3, 200), verify_ta(3, 200)
    assert a.dumps() == b.dumps()
    body = json.loads(a.dumps())
    assert body["pass"] is True and all("provenance" in x for x in body["assertions"])


def test_xiv_sweep_tuples_valid():
    for prm in xiv_parameter_sweep(5, 12):
        xiv(*prm)  # every yielded tuple is accepted by the constructor


def test_xiv_small_sweep():
    rep = verify_xiv_nonexistence(5, 20)
    assert rep.passed
    graphs = rep.data["girth5_graphs"]
    assert [d["params"] for d in graphs] == [[5, 11, 3, 0, 1, 0, 2, 1]]
    assert graphs[0]["half_arc_transitive"] is False


def _sampled_tuples(n_bound, k, seed):
    pool = list(xiv_parameter_sweep(5, n_bound))
    return random.Random(seed).sample(pool, k)


def test_xiv_unit_scaling_is_an_isomorphism():
    for prm in _sampled_tuples(16, 60, 3):
        m, n, r, t, p, a, q, b = prm
        u = next(x for x in range(2, n) if gcd(x, n) == 1)
        src = xiv(*prm).graph
        dst = xiv(m, n, r, u * t % n, p, u * a % n, q, u * b % n).graph
        image = [i * n + (u * j) % n for i in range(m) for j in range(n)]
        assert sorted(tuple(sorted((image[x], image[y]))) for x, y in src.edges()) == dst.edges()


def test_xiv_scaling_representatives():
    pool = list(xiv_parameter_sweep(5, 12))
    reps = [prm for prm in pool if _scaling_minimal(prm)]
    assert 0 < len(reps) < len(pool)
    keys = {(prm[1], prm[2], prm[3], prm[5], prm[7]) for prm in pool}
    for prm in reps:
        n = prm[1]
        assert all((prm[1], prm[2], u * prm[3] % n, u * prm[5] % n, u * prm[7] % n) in keys for u in range(1, n) if gcd(u, n) == 1)


def test_xiv_short_cycle_filter_matches_girth():
    for prm in _sampled_tuples(16, 120, 7):
        g = xiv(*prm).graph
        if g.edge_count != 2 * g.n:
            assert _short_cycle(prm)  # collapsed edges mean a multi-edge or loop
        else:
            assert _short_cycle(prm) == (girth(g) < 5)


def test_xiv_root_counts_match_full_enumeration():
    checked = 0
    for prm in xiv_parameter_sweep(5, 13):
        if _short_cycle(prm):
            continue
        g = xiv(*prm).graph
        per_edge = cycles_through_edge_counts(g, cycles_of_length(g, 5))
        n = prm[1]
        expected = [per_edge.get((min(i * n, w), max(i * n, w)), 0) for i in range(5) for w in g.adjacency[i * n]]
        assert sorted(_root_edge_five_cycles(prm)) == sorted(expected)
        checked += 1
    assert checked == 440


def test_xiv_example_not_half_arc_transitive():
    g = xiv(5, 11, 3, 0, 1, 0, 2, 1).graph
    assert girth(g) == 5
    assert not is_half_arc_transitive_graph(g).half_arc_transitive


def test_xiv_invalid():
    with pytest.raises(ParameterError):
        xiv(5, 11, 3, 1, 1, 0, 2, 1)
    with pytest.raises(VerifyError):
        verify_xiv_nonexistence(3, 20)
    with pytest.raises(VerifyError):
        verify_xiv_nonexistence(5, 61)


def test_run_named_dispatch():
    assert run_named("ta", m=3, bound=50).passed
    with pytest.raises(VerifyError):
        run_named("nonsense")
