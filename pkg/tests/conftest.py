import pytest

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture
def record_criterion():
    def record(k: int, passed: bool, elapsed: float, limit: float | None, note: str = ""):
        within = limit is None or elapsed < limit
        status = "PASS" if passed and within else "FAIL"
        bound = f" (limit {limit:g}s)" if limit is not None else ""
        line = f"criterion {k}: {status}  {elapsed:.2f}s{bound}  {note}".rstrip()
        ACCEPTANCE[k] = line
        print(line)
        return status == "PASS"
    return record
