import pytest

from mushy_stefan.model import ConvectiveBC, MaterialParams


@pytest.fixture
def unit_mp():
    return MaterialParams(rho=1, k1=1, k2=1, c1=1, c2=1, l=1, eps=0.5, gamma=1.0)


@pytest.fixture
def unit_bc():
    return ConvectiveBC(theta0=1.0, Dinf=1.0, h0=10.0)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
