"""Command-line interface: build, analyze, aut, canon, verify, export-dot."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import families, psl2
from .autsearch import SizeGuardExceeded, automorphism_group, certificate_hex
from .graphcore import GraphError, dumps_dot, dumps_graph, loads_graph
from .hatcore import ActionError, InvariantViolation, NotTetravalent, induced_orientation, transitivity
from .pentagon import PentagonError, UnstableBelowCap
from .perm import DegreeMismatch, PermError, PermGroup, dumps_perms, loads_perms
from .pipeline import analyze
from .verify import VerifyError, run_named

EXIT_FAIL = 1
EXIT_ERROR = 2

# most specific first
ERROR_CODES: list[tuple[type, str]] = [
    (NotTetravalent, "NOT_TETRAVALENT"),
    (DegreeMismatch, "DEGREE_MISMATCH"),
    (ActionError, "ACTION_MISMATCH"),
    (InvariantViolation, "INVARIANT_VIOLATION"),
    (UnstableBelowCap, "UNSTABLE_BELOW_CAP"),
    (SizeGuardExceeded, "SIZE_GUARD"),
    (families.ParameterError, "BAD_PARAMETERS"),
    (psl2.Psl2Error, "BAD_PARAMETERS"),
    (VerifyError, "BAD_PARAMETERS"),
    (GraphError, "PARSE_ERROR"),
    (PermError, "PARSE_ERROR"),
    (PentagonError, "ANALYSIS_ERROR"),
    (OSError, "IO_ERROR"),
]


class CliError(Exception):
    def __init__(self, code: str, message: str) -> None:
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_group(graph_n: int, perms_path: str) -> PermGroup:
    degree, perms = loads_perms(_read(perms_path))
    if degree != graph_n:
        raise DegreeMismatch(f"permutation degree {degree} does not match {graph_n} vertices")
    if not perms:
        raise PermError("permutation file has no generators")
    return PermGroup(perms, degree=degree)


def _parse_arc(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'u,v', got {text!r}") from None
    return u, v


# -- build ----------------------------------------------------------------------------


def _build(args) -> tuple[families.Construction, dict[str, list]]:
    fam = args.family
    groups: dict[str, list] = {}
    if fam == "xo":
        con = families.xo(args.m, args.r, args.q)
        if pow(args.q, args.m, args.r) == 1:
            groups["group"] = list(families.xo_generators(args.m, args.r, args.q).values())
    elif fam == "rw":
        con = families.rose_window(args.n, args.a, args.r)
    elif fam == "r12":
        pk = families.r12_special_package()
        con = pk.construction
        groups = {"aut": pk.aut_gens, "g1": pk.g1_gens, "g2": pk.g2_gens}
    elif fam == "psl2":
        cg = psl2.coset_graph(args.p)
        con = families.Construction(
            cg.graph,
            tuple(f"H{v}" for v in range(cg.graph.n)),
            "psl2",
            {"p": cg.p, "xi": cg.xi},
        )
        groups["group"] = [cg.a_perm, cg.b_perm]
    elif fam == "xiv":
        con = families.xiv(args.m, args.n, args.r, args.t, args.p, args.a, args.q, args.b)
    elif fam == "cayley":
        degree, perms = loads_perms(_read(args.perms))
        con = families.cayley(PermGroup(perms, degree=degree), args.connection)
    else:  # pragma: no cover - argparse restricts choices
        raise CliError("BAD_PARAMETERS", f"unknown family {fam}")
    return con, groups


def cmd_build(args) -> int:
    con, groups = _build(args)
    prefix = args.out
    _write(f"{prefix}.hatgraph", dumps_graph(con.graph))
    _write(f"{prefix}.json", json.dumps(con.sidecar(), sort_keys=True, indent=2) + "\n")
    written = [f"{prefix}.hatgraph", f"{prefix}.json"]
    for name, gens in groups.items():
        path = f"{prefix}.{name}.perms"
        _write(path, dumps_perms(gens, con.graph.n))
        written.append(path)
    print(f"built {con.family} graph: {con.graph.n} vertices, {con.graph.edge_count} edges")
    for path in written:
        print(f"wrote {path}")
    return 0


# -- analyze / aut / canon / export-dot --------------------------------------------


def cmd_analyze(args) -> int:
    g = loads_graph(_read(args.graph))
    group = _load_group(g.n, args.perms)
    report = analyze(g, group, seed_arc=args.orientation_seed)
    _write(args.out, report.to_json())
    return 0


def _kind(rep) -> str:
    if rep.half_arc_transitive:
        return "half-arc-transitive"
    if rep.arc_transitive and rep.vertex_transitive:
        return "arc-transitive"
    if rep.vertex_transitive:
        return "vertex-transitive, not edge-transitive"
    return "not vertex-transitive"


def cmd_aut(args) -> int:
    g = loads_graph(_read(args.graph))
    res = automorphism_group(g)
    rep = transitivity(res.group(g.n), g)
    print(f"order {res.order}, {_kind(rep)}")
    if args.out:
        _write(args.out, dumps_perms(list(res.generators), g.n))
    return 0


def cmd_canon(args) -> int:
    g = loads_graph(_read(args.graph))
    print(certificate_hex(g))
    return 0


def cmd_export_dot(args) -> int:
    g = loads_graph(_read(args.graph))
    arcs = None
    if args.perms:
        group = _load_group(g.n, args.perms)
        arcs = induced_orientation(group, g, args.orientation_seed).sorted_arcs()
    _write(args.out, dumps_dot(g, arcs, name=args.name))
    return 0


def cmd_verify(args) -> int:
    kw = {k: getattr(args, k) for k in ("m", "bound", "row", "nbound") if hasattr(args, k)}
    rep = run_named(args.check, **kw)
    _write(args.out, rep.dumps())
    return 0 if rep.passed else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hat5", description="Half-arc-transitive tetravalent graphs of girth 5.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a graph family member")
    fam = b.add_subparsers(dest="family", required=True)
    p = fam.add_parser("xo")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = fam.add_parser("rw")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    fam.add_parser("r12")
    p = fam.add_parser("psl2")
    p.add_argument("--p", type=int, required=True)
    p = fam.add_parser("xiv")
    for name in ("m", "n", "r", "t", "p", "a", "q", "b"):
        p.add_argument(f"--{name}", type=int, required=True)
    p = fam.add_parser("cayley")
    p.add_argument("--perms", required=True, help="HATPERMS v1 generators of the group")
    p.add_argument("--connection", type=int, nargs="+", required=True, help="indices into the sorted element list")
    for p in fam.choices.values():
        p.add_argument("--out", required=True, help="output prefix")
    b.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="hatreport/1 for a graph and group")
    p.add_argument("graph")
    p.add_argument("perms")
    p.add_argument("--orientation-seed", type=_parse_arc, default=None, metavar="U,V")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("aut", help="automorphism group")
    p.add_argument("graph")
    p.add_argument("--out", help="write generators as HATPERMS v1")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("canon", help="canonical-form certificate (hex)")
    p.add_argument("graph")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("export-dot", help="DOT output, oriented when a group is given")
    p.add_argument("graph")
    p.add_argument("--perms")
    p.add_argument("--orientation-seed", type=_parse_arc, default=None, metavar="U,V")
    p.add_argument("--name", default="G")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    v = sub.add_parser("verify", help="bounded verification checks")
    checks = v.add_subparsers(dest="check", required=True)
    p = checks.add_parser("ta")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--bound", type=int, default=1000)
    checks.add_parser("undirected")
    p = checks.add_parser("table")
    p.add_argument("--row", required=True)
    p = checks.add_parser("xiv")
    p.add_argument("--nbound", type=int, default=40)
    for p in checks.choices.values():
        p.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return ap


def _code_for(exc: BaseException) -> str:
    for cls, code in ERROR_CODES:
        if isinstance(exc, cls):
            return code
    return "INTERNAL_ERROR"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        code, msg = exc.code, str(exc)
    except (ValueError, AssertionError, RuntimeError, OSError) as exc:
        code, msg = _code_for(exc), str(exc)
    print(f"error: {code}: {msg}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
