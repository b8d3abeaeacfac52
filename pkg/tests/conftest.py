import random

import pytest

_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def record(request):
    """Log one acceptance line; the test body's outcome decides PASS/FAIL."""
    lines = request.config.stash[_ACCEPTANCE_KEY]
    entry = {}

    def _record(number, title, detail=""):
        entry.update(number=number, title=title, detail=detail)

    yield _record
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    if entry:
        line = f"[{status}] criterion {entry['number']}: {entry['title']}"
        if entry["detail"]:
            line += f" -- {entry['detail']}"
        lines.append((entry["number"], line))
        print(line)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
