from __future__ import annotations

import pytest

from corpus_util import annotations_path, corpus_text
from kavya.annotations import parse_annotations
from kavya.meter import load_meter_db
from kavya.text import parse_composition

_CRITERIA: dict[int, dict] = {}


@pytest.fixture(scope="session")
def corpus():
    return parse_composition(corpus_text())


@pytest.fixture(scope="session")
def db():
    return load_meter_db()


@pytest.fixture(scope="session")
def annotations(corpus):
    return parse_annotations(annotations_path(), corpus)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, name = mark.args
    entry = _CRITERIA.setdefault(n, {"name": name, "passed": True, "tests": 0, "failed": []})
    if rep.when == "call":
        entry["tests"] += 1
    if rep.failed:
        entry["passed"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "PASS" if e["passed"] else "FAIL"
        detail = f" (failed: {', '.join(e['failed'])})" if e["failed"] else ""
        terminalreporter.write_line(f"criterion {n} {e['name']}: {status} [{e['tests']} checks]{detail}")
