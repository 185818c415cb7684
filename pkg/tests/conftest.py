"""Terminal reporting for the acceptance gate.

After any run that touched ``test_acceptance.py``, print one PASS/FAIL line
per acceptance check so the gate can be read at a glance.  Checks encoded as
strict expected failures (claims the implementation demonstrates to be
unattainable as stated; see their docstrings) are labeled explicitly.
"""

from __future__ import annotations

_LABELS = {
    "passed": "PASS",
    "failed": "FAIL",
    "xfailed": "FAIL (expected; documented deviation)",
    "xpassed": "UNEXPECTED PASS (strict xfail)",
    "error": "ERROR",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = {}
    for outcome, label in _LABELS.items():
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(rep, "when", "call") in (
                "call",
                "setup",
            ):
                lines[nodeid.split("::")[-1]] = label
    if lines:
        terminalreporter.section("acceptance summary")
        for name in sorted(lines):
            terminalreporter.write_line(f"{name}: {lines[name]}")
