import os
import sys

# the reference implementations in helpers.py are imported by plain name
sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    lines = getattr(results, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
