import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    _criteria.append((marker.kwargs["criterion"], marker.kwargs["title"], rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, title, passed, detail in sorted(_criteria):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {num}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
