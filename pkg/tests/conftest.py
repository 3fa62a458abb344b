import pytest

_REPORT: list[str] = []


class CriterionReporter:
    """Collects one PASS/FAIL line per acceptance criterion."""

    def __init__(self, sink):
        self.sink = sink

    def __call__(self, number, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}"
        print(line)
        self.sink.append(line)
        return passed


@pytest.fixture
def criterion():
    return CriterionReporter(_REPORT)


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in _REPORT:
        terminalreporter.write_line(line)


from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")
