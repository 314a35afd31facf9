"""Shared pytest plumbing.

The acceptance suite reports one human-readable pass/fail line per
criterion.  Tests record those lines through the ``criterion_log``
fixture; a terminal-summary hook replays them at the end of the run so
they are visible regardless of output capturing.
"""

from __future__ import annotations

import pytest

_CRITERION_LINES: list[str] = []


def _record(line: str) -> None:
    print(line, flush=True)
    _CRITERION_LINES.append(line)


@pytest.fixture
def criterion_log():
    """Callable that prints and records an acceptance-criterion line."""
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
