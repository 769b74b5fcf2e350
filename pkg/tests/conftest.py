import pytest

ACCEPTANCE_COUNT = 16
_results: dict = {}


@pytest.fixture
def report():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        line = f"{status} criterion {number:2d}: {title}" + (f" [{detail}]" if detail else "")
        _results[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    ran = any("test_acceptance" in str(item) for item in getattr(terminalreporter, "_session_items", []))
    if not _results and not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_COUNT + 1):
        terminalreporter.write_line(_results.get(n, f"FAIL criterion {n:2d}: did not run to completion"))


def pytest_collection_finish(session):
    session.config.pluginmanager.get_plugin("terminalreporter")._session_items = list(session.items)
