"""Shared fixtures plus the acceptance summary hook.

Acceptance tests record one PASS/FAIL line each; the hook prints them as a
block at the end of the run so the verdict survives scrolling test output.
"""

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
