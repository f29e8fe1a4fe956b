"""Shared pytest hooks.

The acceptance suite records one verdict per criterion here; the terminal
summary prints them after the run, outside pytest's output capture, so
the pass/fail lines always appear in the log.
"""

acceptance_verdicts = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_verdicts):
        passed, description = acceptance_verdicts[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[acceptance {number:02d}] {verdict}: {description}")
