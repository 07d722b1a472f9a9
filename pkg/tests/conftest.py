from __future__ import annotations

import pytest
from hypothesis import settings

from ckrigidity.action import build_w_action
from ckrigidity.complex import GeomData, blocks, build_nerve
from ckrigidity.coxeter import fig7_graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def graph():
    return fig7_graph()


@pytest.fixture(scope="session")
def geom():
    return GeomData()


@pytest.fixture(scope="session")
def nerve2(geom):
    return build_nerve(geom, 2, 1)


@pytest.fixture(scope="session")
def blocks2(nerve2):
    return blocks(nerve2)


@pytest.fixture(scope="session")
def action2(geom):
    return build_w_action(geom, depth=2, line_range=1)


@pytest.fixture(scope="session")
def action3(geom):
    return build_w_action(geom, depth=3, line_range=1)


@pytest.fixture(scope="session")
def action4(geom):
    return build_w_action(geom, depth=4, line_range=1)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_c" in report.nodeid:
        number = int(report.nodeid.split("::test_c")[1][:2])
        _ACCEPTANCE[number] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        outcome = "PASS" if _ACCEPTANCE[number] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {outcome}")
