import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record ``(label, passed, detail)``; the lines are printed after the run."""

    def record(label, passed, detail=""):
        _CRITERIA.append((label, bool(passed), detail))
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())
