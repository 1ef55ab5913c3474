import pytest

_messages = {}
_outcomes = {}


@pytest.fixture
def acceptance_log(request):
    """Record the one-line summary an acceptance criterion prints at the end."""

    def log(message: str):
        _messages[request.node.nodeid] = message

    return log


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _outcomes[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_outcomes):
        verdict = "PASS" if _outcomes[nodeid] == "passed" else "FAIL"
        label = nodeid.split("::")[-1]
        detail = _messages.get(nodeid, "")
        line = f"{verdict} {label}"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
