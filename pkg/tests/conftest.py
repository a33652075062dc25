import pytest

# (criterion number, PASS/FAIL, summary) lines filled in by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[int, str, str]] = []


@pytest.fixture
def acceptance_log():
    def log(number: int, ok: bool, summary: str):
        line = (number, "PASS" if ok else "FAIL", summary)
        ACCEPTANCE_LINES.append(line)
        print(f"criterion {number}: {line[1]}  {summary}")
    return log


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, tag, summary in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number}: {tag}  {summary}")
