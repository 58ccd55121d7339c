from __future__ import annotations

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_AC = re.compile(r"test_ac(\d\d)_(\w+?)(\[.*\])?$")
_results: dict[str, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    num, name = m.group(1), m.group(2).replace("_", " ")
    ok = report.passed
    prev = _results.get(num)
    _results[num] = (name, ok and (prev is None or prev[1]))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        name, ok = _results[num]
        terminalreporter.write_line(f"AC{num} {'PASS' if ok else 'FAIL'}  {name}")
