import pytest

_ACCEPTANCE_LINES = []


class Criterion:
    """Collects named sub-checks so every one is reported, then asserts."""

    def __init__(self):
        self.failed = []

    def __call__(self, label, ok, detail=""):
        ok = bool(ok)
        status = "PASS" if ok else "FAIL"
        _ACCEPTANCE_LINES.append(f"[{status}] {label}" + (f"  ({detail})" if detail else ""))
        if not ok:
            self.failed.append(f"{label} ({detail})")
        return ok

    def verify(self):
        assert not self.failed, "; ".join(self.failed)


@pytest.fixture
def criterion():
    return Criterion()


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
