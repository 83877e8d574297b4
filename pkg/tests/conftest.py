import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    entry = _criteria.setdefault(number, {"ok": True, "title": "", "detail": []})
    props = dict(report.user_properties)
    entry["title"] = props.get("title", entry["title"])
    if report.failed:
        entry["ok"] = False
    if report.when == "call" and props.get("detail"):
        entry["detail"] = [props["detail"]]


@pytest.fixture(autouse=True)
def _criterion_tag(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", marker.args[0])
        record_property("title", marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] else "FAIL"
        detail = f"  [{entry['detail'][0]}]" if entry["detail"] else ""
        terminalreporter.write_line(f"criterion {number:2d} {status}  {entry['title']}{detail}")
