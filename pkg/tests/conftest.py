import pytest


@pytest.fixture
def acceptance_line(capsys):
    """Print one [PASS]/[FAIL] line per acceptance criterion, bypassing
    capture, then assert."""

    def emit(criterion: str, ok: bool) -> None:
        with capsys.disabled():
            print(f"[{'PASS' if ok else 'FAIL'}] {criterion}")
        assert ok, criterion

    return emit
