"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

from __future__ import annotations

import re

_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    label = match.group(2).replace("_", " ")
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        _outcomes[number] = ("PASS" if report.passed else "FAIL", label + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status, label = _outcomes[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {label}")
