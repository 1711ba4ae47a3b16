import pytest

from sbverify.config_model import ModelParams, certify_bounds
from sbverify.config_model.sections import SectionFamily

# lines recorded by the acceptance suite, echoed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session")
def bounds(params):
    return certify_bounds(params)


@pytest.fixture(scope="session")
def lam(bounds):
    return min(0.25, bounds.lambda_max / 2)


@pytest.fixture(scope="session")
def family(params, lam):
    return SectionFamily(params, lam)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
