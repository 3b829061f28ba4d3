"""Shared pytest wiring: the acceptance verdict board.

Acceptance tests register one verdict line each; the lines are printed
as a terminal summary section so they stay visible under output
capture.
"""

VERDICTS: list[str] = []


def record_verdict(line: str) -> None:
    VERDICTS.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if VERDICTS:
        terminalreporter.section("acceptance verdicts")
        for line in VERDICTS:
            terminalreporter.line(line)
