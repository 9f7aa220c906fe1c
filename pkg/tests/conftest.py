import pytest

_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def criterion_log():
    return _RESULTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for name, ok, detail in _RESULTS:
        mark = "PASS" if ok else "FAIL"
        line = f"[{mark}] {name}"
        if detail:
            line += f" - {detail}"
        tw.write_line(line)
