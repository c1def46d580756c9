"""Shared fixtures and the acceptance-criteria summary printed after the run."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CRITERIA = {
    1: "clique counterexample and corrected exhaustive optimum",
    2: "colouring counterexample on K5 with two colours",
    3: "degree-bounded MST counterexample",
    4: "feedback vertex set on the triangle",
    5: "feedback edge set height exploit",
    6: "bin packing overfill exploit and exhaustive optimum",
    7: "oracle equivalence sweep",
    8: "property suites",
    9: "verify-paper --all",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if rep.failed:
        _outcomes.setdefault(n, []).append(False)
    elif rep.when == "call" and rep.passed:
        _outcomes.setdefault(n, []).append(True)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, text in CRITERIA.items():
        runs = _outcomes.get(n)
        if runs is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {text} ({len(runs or [])} checks)")
