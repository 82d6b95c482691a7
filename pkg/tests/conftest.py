import pytest

# criterion number -> (passed, text); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} {text}")


@pytest.fixture
def record():
    def _record(n: int, ok: bool, text: str) -> None:
        ACCEPTANCE[n] = (bool(ok), text)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {text}")
        assert ok, text
    return _record
