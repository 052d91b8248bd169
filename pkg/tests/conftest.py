import random

import pytest

_acceptance: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if report.failed:
        _acceptance[label] = "FAIL"
    elif report.when == "call" and report.passed:
        _acceptance.setdefault(label, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{_acceptance[label]:4s}  {label}")


@pytest.fixture
def rng():
    return random.Random(20201)
