import contextlib

import pytest

_CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """Context manager recording a pass/fail line for an acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException as exc:
            _CRITERIA[number] = (title, "FAIL", f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
            raise
        _CRITERIA[number] = (title, "PASS", "")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, note = _CRITERIA[number]
        line = f"criterion {number}: {verdict}  {title}"
        terminalreporter.write_line(line + (f"  [{note}]" if note else ""))
