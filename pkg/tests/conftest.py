from __future__ import annotations

import re

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        m = re.match(r"test_c(\d+)_(.*)", name)
        label = f"{int(m.group(1)):>2}. {m.group(2).replace('_', ' ')}" if m else name
        terminalreporter.write_line(f"{_acceptance[name]}  {label}")
