"""Shared pytest wiring: replay the acceptance-gate verdicts at the end.

The acceptance tests record one [PASS]/[FAIL] line per criterion; output
capture would normally hide them, so a terminal-summary section repeats
them where every plain ``pytest -v`` run shows them.
"""

GATE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if GATE_LINES:
        terminalreporter.section("acceptance gate")
        for line in GATE_LINES:
            terminalreporter.write_line(line)
