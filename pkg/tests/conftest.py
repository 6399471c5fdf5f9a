import random

import pytest
from hypothesis import settings


settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    lines = item.config.stash[_ACCEPTANCE]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        verdict = "PASS" if report.passed else "FAIL"
        lines[item.nodeid] = f"{verdict}  {marker.args[0]}  ({report.duration:.2f}s)"


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines.values():
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20261016)
