"""Shared pytest plumbing: a per-criterion summary for the acceptance suite."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    desc = m.group(2).replace("_", " ")
    _results[num] = (report.outcome.upper().replace("PASSED", "PASS").replace("FAILED", "FAIL"), desc)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        outcome, desc = _results[num]
        terminalreporter.write_line(f"criterion {num:2d}: {outcome} - {desc}")
