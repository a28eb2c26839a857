import pytest

# (criterion id, description, passed, detail) collected by test_acceptance
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    def record(cid, text, ok, detail=""):
        ACCEPTANCE_LINES.append((cid, text, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text, ok, detail in sorted(ACCEPTANCE_LINES, key=lambda r: int(r[0][2:])):
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'} {cid}: {text}" + (f" ({detail})" if detail else ""))
