import pytest

# filled by tests/test_acceptance.py: (number, title, passed, seconds, budget, note)
ACCEPTANCE_RESULTS = []
# open-conjecture runs that are reported but never asserted: (title, summary)
EVIDENCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS and not EVIDENCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title, passed, seconds, budget, note in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number:>2}: {title} ({seconds:.2f}s, budget {budget}s)"
        if note:
            line += f" - {note}"
        tr.write_line(line)
    for title, summary in EVIDENCE_RESULTS:
        tr.write_line(f"[EVIDENCE] {title}: {summary}")


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    from latsimplex.io import emit_fixture_suite

    d = tmp_path_factory.mktemp("fixtures")
    emit_fixture_suite(str(d))
    return d
