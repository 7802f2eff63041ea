import pytest

_LINES = pytest.StashKey[dict]()


@pytest.fixture
def report(request):
    """report(k, ok, detail): record the PASS/FAIL line for acceptance criterion k."""
    lines = request.config.stash.setdefault(_LINES, {})

    def emit(k: int, ok: bool, detail: str) -> None:
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[k] = line
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
