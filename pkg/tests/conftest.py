"""Shared pytest plumbing: acceptance criteria print one summary line each."""

import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance-criterion claim; asserts it and saves the line
    for the end-of-run summary."""

    def report(label: str, ok: bool, detail: str) -> None:
        line = f"{label}: {'PASS' if ok else 'FAIL'} - {detail}"
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
