import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for the terminal summary."""
    def record(label: str, ok: bool, detail: str = ""):
        CRITERIA.append((label, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
