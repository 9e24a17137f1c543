import pytest

# criterion id -> (title, outcome, seconds, limit, detail)
RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, title, limit): acceptance criterion with wall-clock limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when != "call":
        return
    cid, title, limit = m.args
    detail = ""
    if rep.failed:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else "failed"
    RESULTS[cid] = (title, "PASS" if rep.passed else "FAIL", rep.duration, limit, detail)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(RESULTS, key=lambda c: (int("".join(ch for ch in c if ch.isdigit())), c)):
        title, status, sec, limit, detail = RESULTS[cid]
        line = f"criterion {cid:<3} {status}  {sec:7.2f}s / {limit:g}s  {title}"
        if detail:
            line += f"  [{detail[:160]}]"
        tr.write_line(line)
