import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import run_for, sweep_runs  # noqa: E402


@pytest.fixture
def run():
    return run_for


@pytest.fixture(scope="session")
def sweep():
    return sweep_runs()


ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    failed_setup = report.when == "setup" and report.outcome != "passed"
    if report.when != "call" and not failed_setup:
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
