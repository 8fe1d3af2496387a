import pytest

from rydcp import kernels

# filled by test_acceptance.py, one line per criterion
ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
