import pytest

_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line: ``report(k, ok, summary)``."""
    def add(k: int, ok: bool, summary: str) -> None:
        _LINES.append(f"criterion {k:>2} [{'PASS' if ok else 'FAIL'}] {summary}")
    return add


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
