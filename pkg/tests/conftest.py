import pytest

_LINES = {}


def _note(number, ok, detail):
    prev = _LINES.get(number)
    if prev is not None:
        ok = ok and prev[0]
        detail = prev[1] + "; " + detail
    _LINES[number] = (ok, detail)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by this test")


@pytest.fixture
def criterion(request):
    """Record a result for the test's acceptance criterion; printed in the summary."""
    number = request.node.get_closest_marker("criterion").args[0]

    def record(ok, detail):
        _note(number, ok, detail)
        request.node._recorded = True
        assert ok, f"criterion {number}: {detail}"

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and rep.when == "call" and rep.failed and not getattr(item, "_recorded", False):
        _note(mark.args[0], False, f"{item.name} raised {call.excinfo.typename}")


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_LINES):
        ok, detail = _LINES[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
