import re

import pytest

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)_", item.name)
    if m is None:
        return
    key = int(m.group(1))
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if rep.when == "call" or failed:
        _CRITERIA[key] = (_CRITERIA.get(key, ("PASS", item.name))[0] if not failed else "FAIL",
                          item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        status, name = _CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {status}  ({name})")
