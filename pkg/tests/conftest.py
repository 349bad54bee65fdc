import pytest

from algmusic.counterpoint import CounterpointWorld, PolarityVariant

ACCEPTANCE_LINES: list[str] = []
_RECORDED: set[str] = set()


@pytest.fixture(scope="session")
def world():
    return CounterpointWorld()


@pytest.fixture(scope="session", params=list(PolarityVariant), ids=lambda v: v.value)
def any_world(request):
    return CounterpointWorld(polarity_variant=request.param)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the summary hook prints them after the run."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _RECORDED.add(request.node.nodeid)
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_runtest_logreport(report):
    # a criterion test that raised before recording still gets its FAIL line
    if report.when == "call" and report.failed and "test_acceptance" in report.nodeid:
        if report.nodeid not in _RECORDED:
            ACCEPTANCE_LINES.append(f"[FAIL] {report.nodeid.split('::')[-1]}  (raised before checking)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
