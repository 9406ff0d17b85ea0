from __future__ import annotations

import pytest

from nofil.design import TripleSystem

STS9_BLOCKS = "123 456 789 147 258 369 159 267 348 168 249 357".split()
FANO_BLOCKS = ["0 1 3", "1 2 4", "2 3 5", "3 4 6", "4 5 0", "5 6 1", "6 0 2"]

_acceptance_results: list = []


@pytest.fixture
def sts9() -> TripleSystem:
    return TripleSystem.from_blocks([list(b) for b in STS9_BLOCKS])


@pytest.fixture
def fano() -> TripleSystem:
    return TripleSystem.from_blocks([b.split() for b in FANO_BLOCKS])


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): one line in the acceptance summary")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = ""
        if report.failed:
            detail = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else "failed"
            detail = detail.splitlines()[0][:160]
        _acceptance_results.append((mark.args[0], "PASS" if report.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in _acceptance_results:
        line = f"{status}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
