import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS = []


def pytest_configure(config):
    config._acceptance_results = _RESULTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _RESULTS:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
