"""The composite analysis of one (graph, group) pair, reported as hatreport/1."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import metadata

from .graphcore import Graph, girth, is_connected
from .hatcore import (
    InvariantViolation,
    alternating_cycles,
    default_seed_arc,
    induced_orientation,
    is_invariant,
    require_tetravalent,
    transitivity,
)
from .pentagon import (
    DEFAULT_MAX_GROUP_ENUM,
    classes_are_blocks,
    classify_five_cycles,
    consistent_cycles,
    five_cycle_checks,
    reachability,
)
from .perm import PermGroup

SCHEMA = "hatreport/1"


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


@dataclass(frozen=True)
class HatReport:
    body: dict
    seconds: float

    def to_json(self) -> str:
        env = {"report": self.body, "envelope": {"seconds": round(self.seconds, 3)}}
        return json.dumps(env, sort_keys=True, indent=2) + "\n"

    def body_json(self) -> str:
        return json.dumps(self.body, sort_keys=True, indent=2) + "\n"

    def __getitem__(self, key: str):
        return self.body[key]


def _fail(name: str, detail: str) -> None:
    raise InvariantViolation(f"{name}: {detail}")


def analyze(
    g: Graph,
    group: PermGroup,
    seed_arc: tuple[int, int] | None = None,
    max_group_enum: int = DEFAULT_MAX_GROUP_ENUM,
) -> HatReport:
    t0 = time.perf_counter()
    require_tetravalent(g)
    gi = girth(g)
    body: dict = {
        "schema": SCHEMA,
        "tool_version": tool_version(),
        "graph": {
            "order": g.n,
            "size": g.edge_count,
            "girth": gi if gi != float("inf") else None,
            "regular_degree": 4,
            "connected": is_connected(g),
        },
        "group": {"order": group.order(), "generators": len(group.generators)},
    }
    tr = transitivity(group, g)
    body["transitivity"] = tr.to_json()
    if not tr.half_arc_transitive:
        body["orientation_seed"] = None
        return HatReport(body, time.perf_counter() - t0)

    seed = tuple(seed_arc) if seed_arc is not None else default_seed_arc(g)
    o = induced_orientation(group, g, seed)
    if not is_invariant(group, o):
        _fail("orientation-invariance", "induced orientation is not preserved by a generator")
    body["orientation_seed"] = list(seed)

    alt = alternating_cycles(o)
    if alt.tightly_attached != (alt.radius == alt.attachment):
        _fail("tight-attachment", "flag disagrees with radius and attachment")
    body["alternating"] = alt.to_json()

    if gi >= 5:
        five = classify_five_cycles(g, o)
        checks = five_cycle_checks(group, g, five)
        if not checks.no_type2:
            _fail("no-type-2", "a 5-cycle of type 2 occurs")
        if not checks.types_preserved:
            _fail("types-preserved", "a group element changes the type of a 5-cycle")
        if gi == 5 and not checks.neighbourhood_15:
            _fail("neighbourhood-15", "a 5-cycle has a closed neighbourhood of size other than 15")
        body["five_cycles"] = five.to_json()
        body["five_cycles"]["all_directed"] = checks.all_directed
    else:
        body["five_cycles"] = None

    cons = consistent_cycles(group, g, o, max_group_enum, seed_arc=seed)
    if len(cons.orbit_lengths) != 2:
        _fail("two-consistent-orbits", f"found {len(cons.orbit_lengths)} orbits")
    body["consistent"] = cons.to_json()

    reach = reachability(o)
    if not classes_are_blocks(group, reach):
        _fail("reachability-blocks", "R+ classes are not permuted by the group")
    body["reachability"] = {**reach.to_json(), "stabilization_depth": reach.stabilization_depth}
    return HatReport(body, time.perf_counter() - t0)


def flat_fragment(report: HatReport) -> dict:
    """The fixed-key summary used by the table checks."""
    b = report.body
    out = {k: b["transitivity"][k] for k in ("vertex_transitive", "edge_transitive", "arc_transitive", "stabilizer_order")}
    alt = b.get("alternating") or {}
    out.update({k: alt.get(k) for k in ("radius", "attachment", "tightly_attached")})
    five = b.get("five_cycles") or {}
    out["five_cycle_types"] = five.get("five_cycle_types")
    out["five_cycles_per_edge"] = five.get("five_cycles_per_edge")
    out["consistent_cycle_lengths"] = (b.get("consistent") or {}).get("consistent_cycle_lengths")
    reach = b.get("reachability") or {}
    out["alter_perimeter"] = reach.get("alter_perimeter")
    out["alter_complete"] = reach.get("alter_complete")
    return out
