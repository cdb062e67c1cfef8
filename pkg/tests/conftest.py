from functools import lru_cache

import hypothesis
import pytest

from rnacompat.asymptotics import clt_params
from rnacompat.compatibility import fraction_curve
from rnacompat.series import count_table
from rnacompat.structure import StructureClass

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


@lru_cache(maxsize=None)
def cached_table(lam: int, r: int, n_max: int, method: str = "auto"):
    return count_table(StructureClass(lam, r), n_max, method=method)


P_GRID = tuple(f"0.{k:02d}" for k in range(5, 55, 5))
ENVELOPE_NS = (100, 400, 1600)


@lru_cache(maxsize=None)
def max_fraction_errors(lam: int, r: int, ns: tuple[int, ...] = ENVELOPE_NS) -> dict[int, float]:
    """Max |exact - gaussian| over the two-letter grid, per n; the table is not kept."""
    c = StructureClass(lam, r)
    t = count_table(c, max(ns))
    params = clt_params(c)
    return {n: max(abs(float(e) - g) for _, e, g in fraction_curve(c, n, P_GRID, t, params)) for n in ns}


@pytest.fixture(scope="session")
def table():
    return cached_table


# -- acceptance summary: one line per criterion ---------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion this test checks")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    num, title = marker
    entry = _criteria.setdefault(num, {"title": title, "passed": 0, "failed": []})
    if report.outcome == "passed":
        entry["passed"] += 1
    else:
        entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if not e["failed"] else "FAIL"
        line = f"criterion {num:>2} {status}  {e['title']}  ({e['passed']} passed"
        if e["failed"]:
            line += f", failing: {', '.join(e['failed'])}"
        terminalreporter.write_line(line + ")")
