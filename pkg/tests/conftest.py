import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))


_criteria = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        ok = report.passed and _criteria.get(key, True)
        _criteria[key] = bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), ok in sorted(_criteria.items()):
        terminalreporter.write_line(f"CRITERION {n:2d} {name}: {'PASS' if ok else 'FAIL'}")
