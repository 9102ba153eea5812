import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def record_acceptance():
    def record(number: int, name: str, passed: bool, detail: str, seconds: float):
        line = "[%s] %2d %s: %s (%.1fs)" % ("PASS" if passed else "FAIL", number, name, detail, seconds)
        ACCEPTANCE_LINES[number] = line
        print(line)

    return record
