import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from inverse_source.grid import make_grid  # noqa: E402

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def grid():
    return make_grid(2049)


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per criterion; echoed in the terminal summary."""
    def record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0].split(".")[0])):
            terminalreporter.write_line(line)
