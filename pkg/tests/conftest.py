import pytest

from faultdiag import AlwaysYes, Session, parse_world


@pytest.fixture
def session_for():
    def make(text, strategy=None):
        return Session(parse_world(text), strategy or AlwaysYes())

    return make


_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_failed = rep.failed


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the end-of-run summary."""
    names = []

    def record(name, passed, detail=""):
        names.append(name)
        _CRITERIA[name] = (bool(passed), detail)

    yield record
    if getattr(request.node, "call_failed", False):
        for name in names or [request.node.name]:
            _CRITERIA[name] = (False, _CRITERIA.get(name, (False, "test failed"))[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        passed, detail = _CRITERIA[name]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
