import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    def record(number, title, failures, checked):
        status = "PASS" if not failures else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title} "
                                f"({checked} checks, {len(failures)} failures)")
        assert not failures, failures[:5]
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
