import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")


# one PASS/FAIL line per acceptance criterion, printed after the run

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        _ACCEPTANCE[name] = "PASS" if report.passed and _ACCEPTANCE.get(name) != "FAIL" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        number = int(name.split("_")[2])
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number:2d} {_ACCEPTANCE[name]}  {label}")
