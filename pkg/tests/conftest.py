import re

_OUTCOMES: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_", report.nodeid)
    if m and (report.when == "call" or report.failed):
        _OUTCOMES.setdefault(int(m.group(1)), report.outcome)
        if report.failed:
            _OUTCOMES[int(m.group(1))] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    from test_acceptance import RESULTS

    terminalreporter.section("acceptance criteria")
    for k in sorted(_OUTCOMES):
        ok, note = RESULTS.get(k, (False, "raised before reaching its check"))
        ok = ok and _OUTCOMES[k] == "passed"
        terminalreporter.write_line(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {note}")
