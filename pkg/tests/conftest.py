import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_RESULTS = []
SUITE_BUDGET_S = 60.0
_started = []


@pytest.fixture
def rng():
    return random.Random(20141101)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        ACCEPTANCE_RESULTS.append((marker.args[0], report.passed))


def pytest_sessionstart(session):
    _started.append(time.perf_counter())


def _suite_elapsed():
    return time.perf_counter() - _started[0]


def pytest_sessionfinish(session, exitstatus):
    # the runtime budget belongs to the end-to-end criterion
    if ACCEPTANCE_RESULTS and _suite_elapsed() >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion checked by this test")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
    elapsed = _suite_elapsed()
    verdict = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    terminalreporter.write_line(f"{verdict}  full suite runtime {elapsed:.1f} s < {SUITE_BUDGET_S:.0f} s")
