import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    number = int(name.split("_")[2])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        base = name.split("[")[0]
        previous = _ACCEPTANCE.get(number, ("passed", base))[0]
        # a parametrized criterion passes only if every case does
        outcome = report.outcome if previous == "passed" else previous
        _ACCEPTANCE[number] = (outcome, base)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        outcome, name = _ACCEPTANCE[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {name}")


import mpmath
import pytest


@pytest.fixture(autouse=True)
def _working_precision():
    with mpmath.workdps(30):
        yield
