import json
import subprocess
import sys

import pytest

from hat5.cli import main
from hat5.graphcore import dumps_graph, loads_graph
from hat5.perm import loads_perms

from oracles import cycle_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_xo(tmp_path, capsys):
    prefix = str(tmp_path / "dh")
    code, out, _ = run(capsys, "build", "xo", "--m", "3", "--r", "9", "--q", "4", "--out", prefix)
    assert code == 0
    g = loads_graph((tmp_path / "dh.hatgraph").read_text())
    assert g.n == 27 and g.edge_count == 54
    side = json.loads((tmp_path / "dh.json").read_text())
    assert side["family"] == "xo" and side["params"] == {"m": 3, "r": 9, "q": 4}
    degree, gens = loads_perms((tmp_path / "dh.group.perms").read_text())
    assert degree == 27 and len(gens) == 3
    assert "27 vertices" in out


def test_build_rw(tmp_path, capsys):
    code, _, _ = run(capsys, "build", "rw", "--n", "12", "--a", "5", "--r", "2", "--out", str(tmp_path / "rw"))
    assert code == 0
    assert loads_graph((tmp_path / "rw.hatgraph").read_text()).n == 24


def test_build_psl2(tmp_path, capsys):
    code, _, _ = run(capsys, "build", "psl2", "--p", "11", "--out", str(tmp_path / "psl"))
    assert code == 0
    assert loads_graph((tmp_path / "psl.hatgraph").read_text()).n == 330
    assert loads_perms((tmp_path / "psl.group.perms").read_text())[0] == 330


def test_build_r12_groups(tmp_path, capsys):
    assert run(capsys, "build", "r12", "--out", str(tmp_path / "r12"))[0] == 0
    for name in ("aut", "g1", "g2"):
        assert (tmp_path / f"r12.{name}.perms").exists()


def test_build_bad_parameters(tmp_path, capsys):
    code, _, err = run(capsys, "build", "xo", "--m", "3", "--r", "8", "--q", "3", "--out", str(tmp_path / "x"))
    assert code == 2
    assert err.startswith("error: BAD_PARAMETERS: ")
    assert err.count("\n") == 1


@pytest.fixture
def r12_files(tmp_path, capsys):
    run(capsys, "build", "r12", "--out", str(tmp_path / "r12"))
    return tmp_path / "r12"


def test_analyze_g2_report(r12_files, capsys):
    code, out, _ = run(capsys, "analyze", f"{r12_files}.hatgraph", f"{r12_files}.g2.perms")
    assert code == 0
    report = json.loads(out)["report"]
    assert report["schema"] == "hatreport/1"
    assert report["five_cycles"]["five_cycle_types"] == {"2": 0, "3": 48, "4": 0, "5": 0}
    assert report["transitivity"]["half_arc_transitive"] is True


def test_analyze_body_deterministic(r12_files, capsys):
    bodies = []
    for _ in range(2):
        _, out, _ = run(capsys, "analyze", f"{r12_files}.hatgraph", f"{r12_files}.g1.perms")
        bodies.append(json.dumps(json.loads(out)["report"], sort_keys=True))
    assert bodies[0] == bodies[1]


def test_analyze_orientation_seed(r12_files, capsys):
    _, a, _ = run(capsys, "analyze", f"{r12_files}.hatgraph", f"{r12_files}.g1.perms")
    _, b, _ = run(capsys, "analyze", f"{r12_files}.hatgraph", f"{r12_files}.g1.perms", "--orientation-seed", "1,0")
    ra, rb = json.loads(a)["report"], json.loads(b)["report"]
    assert ra["orientation_seed"] == [0, 1] and rb["orientation_seed"] == [1, 0]
    assert ra["five_cycles"] == rb["five_cycles"]


def test_analyze_arc_transitive_stops_early(r12_files, capsys):
    _, out, _ = run(capsys, "analyze", f"{r12_files}.hatgraph", f"{r12_files}.aut.perms")
    report = json.loads(out)["report"]
    assert report["transitivity"]["arc_transitive"] is True
    assert report["orientation_seed"] is None


def test_analyze_not_tetravalent(tmp_path, capsys):
    (tmp_path / "c5.hatgraph").write_text(dumps_graph(cycle_graph(5)))
    (tmp_path / "c5.perms").write_text("HATPERMS v1\n5\n1 2 3 4 0\n")
    code, _, err = run(capsys, "analyze", str(tmp_path / "c5.hatgraph"), str(tmp_path / "c5.perms"))
    assert code == 2 and err.startswith("error: NOT_TETRAVALENT: ")


def test_analyze_degree_mismatch(r12_files, tmp_path, capsys):
    (tmp_path / "small.perms").write_text("HATPERMS v1\n3\n1 2 0\n")
    code, _, err = run(capsys, "analyze", f"{r12_files}.hatgraph", str(tmp_path / "small.perms"))
    assert code == 2 and err.startswith("error: DEGREE_MISMATCH: ")


def test_analyze_action_mismatch(r12_files, tmp_path, capsys):
    swap = list(range(24))
    swap[0], swap[1] = 1, 0
    (tmp_path / "bad.perms").write_text("HATPERMS v1\n24\n" + " ".join(map(str, swap)) + "\n")
    code, _, err = run(capsys, "analyze", f"{r12_files}.hatgraph", str(tmp_path / "bad.perms"))
    assert code == 2 and err.startswith("error: ACTION_MISMATCH: ")


def test_parse_error(tmp_path, capsys):
    (tmp_path / "junk.hatgraph").write_text("not a graph\n")
    code, _, err = run(capsys, "canon", str(tmp_path / "junk.hatgraph"))
    assert code == 2 and err.startswith("error: PARSE_ERROR: ")


def test_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "canon", str(tmp_path / "nope.hatgraph"))
    assert code == 2 and err.startswith("error: IO_ERROR: ")


def test_aut_r12(r12_files, tmp_path, capsys):
    code, out, _ = run(capsys, "aut", f"{r12_files}.hatgraph", "--out", str(tmp_path / "aut.perms"))
    assert code == 0 and out == "order 96, arc-transitive\n"
    assert loads_perms((tmp_path / "aut.perms").read_text())[0] == 24


def test_canon_sign_pair(tmp_path, capsys):
    hexes = []
    for q in ("4", "7"):
        prefix = str(tmp_path / f"x{q}")
        run(capsys, "build", "xo", "--m", "3", "--r", "9", "--q", q, "--out", prefix)
        _, out, _ = run(capsys, "canon", f"{prefix}.hatgraph")
        hexes.append(out.strip())
    assert hexes[0] == hexes[1] and len(hexes[0]) == 64


def test_export_dot(r12_files, capsys):
    _, plain, _ = run(capsys, "export-dot", f"{r12_files}.hatgraph")
    assert plain.startswith("graph G {\n") and plain.count(" -- ") == 48
    _, oriented, _ = run(capsys, "export-dot", f"{r12_files}.hatgraph", "--perms", f"{r12_files}.g1.perms", "--name", "R12")
    assert oriented.startswith("digraph R12 {\n") and oriented.count(" -> ") == 48


def test_verify_ta(capsys):
    code, out, _ = run(capsys, "verify", "ta", "--m", "3", "--bound", "1000")
    assert code == 0
    sols = [(s["r"], s["q"]) for s in json.loads(out)["data"]["solutions"]]
    assert sols == [(9, 4), (9, 7)]


def test_verify_unknown_row(capsys):
    code, _, err = run(capsys, "verify", "table", "--row", "HAT[1,1]")
    assert code == 2 and "BAD_PARAMETERS" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hat5.cli", "verify", "ta", "--m", "3", "--bound", "20"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True


def test_verify_failure_exit_code(capsys):
    # below r = 9 the expected solutions are out of range, so the check fails
    code, out, _ = run(capsys, "verify", "ta", "--m", "3", "--bound", "7")
    assert code == 1 and json.loads(out)["pass"] is False
