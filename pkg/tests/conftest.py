"""Shared fixtures: the constructed graphs and groups used across the suite."""

from __future__ import annotations

import pytest

from hat5 import families, psl2
from hat5.autsearch import automorphism_group
from hat5.perm import PermGroup

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def r12():
    return families.r12_special_package()


@pytest.fixture(scope="session")
def r12_groups(r12):
    return {
        "aut": PermGroup(r12.aut_gens),
        "g1": PermGroup(r12.g1_gens),
        "g2": PermGroup(r12.g2_gens),
    }


@pytest.fixture(scope="session")
def doyle_holt():
    g = families.xo(3, 9, 4).graph
    return g, automorphism_group(g).group(g.n)


@pytest.fixture(scope="session")
def xo55():
    g = families.xo(5, 11, 3).graph
    gens = families.xo_generators(5, 11, 3)
    return g, PermGroup(list(gens.values()))


@pytest.fixture(scope="session")
def psl11():
    return psl2.coset_graph(11)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    """Print and remember one pass/fail line per acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record
