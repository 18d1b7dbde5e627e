import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SUITE_LIMIT = 120.0
_state = {"start": None, "criteria": {}}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, name): acceptance criterion n")
    _state["start"] = time.perf_counter()


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    n, name = crit
    entry = _state["criteria"].setdefault(n, {"name": name, "ok": True, "failed": []})
    if report.failed:
        entry["ok"] = False
        entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    crits = _state["criteria"]
    if not crits:
        return
    elapsed = time.perf_counter() - _state["start"]
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(crits):
        c = crits[n]
        ok = c["ok"]
        extra = ""
        if n == 10:
            timed = elapsed < SUITE_LIMIT
            extra = f"; session time {elapsed:.1f} s (limit {SUITE_LIMIT:.0f} s)"
            ok = ok and timed
        status = "PASS" if ok else "FAIL"
        failed = f"; failing: {', '.join(c['failed'])}" if c["failed"] else ""
        tr.write_line(f"criterion {n:2d} {status}  {c['name']}{failed}{extra}")
