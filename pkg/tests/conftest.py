import pytest

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        n, text = mark.args
        _RESULTS.append((n, text, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, text, outcome, dur in sorted(_RESULTS, key=lambda r: r[0]):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {n:>2}: {text} ({dur:.1f} s)")
