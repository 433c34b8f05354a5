import contextlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[int, str] = {}


@contextlib.contextmanager
def _record(number: int, title: str):
    try:
        yield
    except BaseException as exc:
        line = f"criterion {number:2d} FAIL  {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        _CRITERIA[number] = line
        print(line)
        raise
    line = f"criterion {number:2d} PASS  {title}"
    _CRITERIA[number] = line
    print(line)


@pytest.fixture
def criterion():
    """Context manager that records a PASS/FAIL line for an acceptance criterion."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
