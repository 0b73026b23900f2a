import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    num = props["criterion"]
    entry = _criteria.setdefault(num, {"title": props.get("title", ""), "ok": True,
                                       "seen": False, "details": []})
    if report.when == "call" or report.outcome != "passed":
        entry["seen"] = True
        if report.outcome == "failed":
            entry["ok"] = False
        if report.when == "call":
            entry["details"].extend(v for k, v in report.user_properties if k == "detail")


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", marker.args[0]))
        request.node.user_properties.append(("title", marker.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        entry = _criteria[num]
        if not entry["seen"]:
            continue
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {entry['title']}")
        for line in entry["details"]:
            terminalreporter.write_line(f"              {line}")
