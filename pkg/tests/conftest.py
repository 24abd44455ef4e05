import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sandpile_ag import catalog  # noqa: E402

CRITERIA = {
    1: "directed order-21 graph: group, identity, burning, recurrents, h-vector",
    2: "mixed four-vertex graph: burning data and Groebner basis",
    3: "diamond: group, superstables, recurrents, homogeneous basis, Tutte, Merino",
    4: "diamond: graded Betti numbers and Hochster example",
    5: "directed Gorenstein graph: Betti numbers and classification",
    6: "partition formula for Betti numbers",
    7: "Riemann-Roch residuals",
    8: "property suites",
    9: "orbit vanishing of the toppling ideal",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = getattr(report, "_criterion", None)
    if n is not None:
        _outcomes[n].append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.get_result()._criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        res = _outcomes.get(n)
        if not res:
            status = "NOT RUN"
        else:
            status = "PASS" if all(res) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {CRITERIA[n]} ({len(res or [])} checks)")


@pytest.fixture(scope="session")
def directed21():
    return catalog.directed21()


@pytest.fixture(scope="session")
def mixed4():
    return catalog.mixed4()


@pytest.fixture(scope="session")
def gorenstein5():
    return catalog.gorenstein5()


@pytest.fixture(scope="session")
def diamond():
    return catalog.diamond()


@pytest.fixture(scope="session")
def diamond_betti(diamond):
    from sandpile_ag.resolution import graded_betti
    return graded_betti(diamond)


@pytest.fixture(scope="session")
def gorenstein5_betti(gorenstein5):
    from sandpile_ag.resolution import graded_betti
    return graded_betti(gorenstein5)


@pytest.fixture(scope="session")
def all_named():
    return {name: catalog.load(name) for name in catalog.named()}
