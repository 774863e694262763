import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import helpers


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not helpers.ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, ok, dt, note in sorted(helpers.ACCEPTANCE_RESULTS):
        line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} ({dt:.1f} s)"
        if note:
            line += f" - {note}"
        terminalreporter.write_line(line)
