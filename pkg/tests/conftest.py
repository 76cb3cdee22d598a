import functools
from pathlib import Path

import pytest

from headtail.cli import builtin_census, builtin_knots
from headtail.diagram import load_knots, parse_pd
from headtail.stability import load_census
from headtail.statesum import colored_jones

DATA = Path(__file__).parent / "data"

KNOTS = {d.name: d for d in load_knots(builtin_knots())}


@functools.lru_cache(maxsize=None)
def jones(name: str, n: int):
    """Colored Jones of a bundled knot, shared across the whole session."""
    return colored_jones(KNOTS[name], n)


def small(max_crossings: int, alternating_only: bool = False):
    from headtail.diagram import is_alternating

    return [
        name for name, d in KNOTS.items()
        if len(d.crossings) <= max_crossings and (not alternating_only or is_alternating(d))
    ]


@pytest.fixture(scope="session")
def knots():
    return KNOTS


@pytest.fixture(scope="session")
def census():
    return load_census(builtin_census())


@pytest.fixture
def trefoil():
    return KNOTS["3_1"]


@pytest.fixture
def figure_eight():
    return KNOTS["4_1"]


@pytest.fixture
def kink():
    # one positive curl on a circle
    return parse_pd("kink : X[1,1,2,2]")


# -- acceptance summary ----------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, text: str) -> bool:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
