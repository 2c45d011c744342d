import re

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _ACCEPTANCE[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    def key(nodeid):
        m = re.search(r"criterion_(\d+)", nodeid)
        return int(m.group(1)) if m else 99
    for nodeid in sorted(_ACCEPTANCE, key=key):
        name = nodeid.split("::")[-1]
        m = re.match(r"test_criterion_(\d+)_(.*)", name)
        label = f"criterion {m.group(1)} ({m.group(2)})" if m else name
        verdict = "PASS" if _ACCEPTANCE[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} {label}")
