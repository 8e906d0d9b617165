from __future__ import annotations

import pytest

from soppia import default_clt_schema

from helpers import CORPUS_IDS, load_fixture

_ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.fixture(scope="session")
def clt():
    return default_clt_schema()


@pytest.fixture(scope="session")
def corpus():
    return [(case_id, load_fixture(case_id)) for case_id in CORPUS_IDS]


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.when == "call":
        _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and (report.failed or report.skipped):
        _ACCEPTANCE_RESULTS[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    for name, status in _ACCEPTANCE_RESULTS.items():
        label = name.removeprefix("test_").replace("_", " ")
        terminalreporter.write_line(f"[acceptance] {status} {label}")
