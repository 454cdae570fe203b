import pytest

from qpfaff.ncalg import generic_spec, q_inverse_spec, q_negative_spec


@pytest.fixture
def g2():
    return generic_spec(2)


@pytest.fixture
def g3():
    return generic_spec(3)


@pytest.fixture
def qi4():
    return q_inverse_spec(4)


@pytest.fixture
def qn4():
    return q_negative_spec(4)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
