"""Shared pytest plumbing.

The acceptance tests in ``test_acceptance.py`` each certify one numbered
criterion; the hook below echoes a one-line PASS/FAIL verdict per criterion
to the terminal after the run, so the gate summary survives output capture.
"""

from __future__ import annotations

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    # keep first failure verdict if reruns ever happen
    _ACCEPTANCE.setdefault(name, outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        label = name.replace("test_criterion_", "criterion ").replace("_", " ")
        terminalreporter.write_line(f"{label}: {_ACCEPTANCE[name]}")
