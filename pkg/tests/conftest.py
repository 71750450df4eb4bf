"""Collect acceptance outcomes and print one PASS/FAIL line per criterion."""

import re

_CRITERIA: dict[int, list[bool]] = {}
_TITLES = {
    1: "maximize agrees with brute force for n <= 20",
    2: "exact Sidon table to n = 60 within bounds",
    3: "Bose-Chowla and thin constructions, exact multiplicities",
    4: "closed-form bounds, Johnson bound and ordering",
    5: "parameter feasibility windows",
    6: "certified translate counts",
    7: "randomized exact-inequality suites",
    8: "case report consistency on large inputs",
}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(m.group(1))
        _CRITERIA.setdefault(num, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        verdict = "PASS" if all(_CRITERIA[num]) else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {num}: {_TITLES.get(num, '')}")
