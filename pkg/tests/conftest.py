import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from signlab.roots import find_roots  # noqa: E402


@lru_cache(maxsize=None)
def cached_roots(n):
    return find_roots(n)


@pytest.fixture(scope="session")
def roots_for():
    return cached_roots


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
