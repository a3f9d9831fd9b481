import pytest

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    report = (yield).get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _outcomes.setdefault(number, {"title": title, "passed": 0, "failed": []})
    if report.failed:
        entry["failed"].append(item.name)
    elif report.when == "call" and report.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        e = _outcomes[number]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"{status} criterion {number}: {e['title']} ({e['passed']} checks passed"
        if e["failed"]:
            line += f", {len(e['failed'])} failed: {', '.join(e['failed'])}"
        terminalreporter.write_line(line + ")")
