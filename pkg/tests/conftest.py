from __future__ import annotations

import pytest

_CRITERIA: dict[int, list[str]] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    _TITLES[number] = title
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA.setdefault(number, []).append("passed" if report.passed else report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _CRITERIA[number]
        status = "PASS" if all(r == "passed" for r in results) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {_TITLES[number]}")
