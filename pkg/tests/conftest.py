import pytest

from extres.extension import extend
from extres.models import anharmonic_series, zero_dim_series


@pytest.fixture(scope="session")
def anharmonic_ext():
    """Extensions of the printed quartic-oscillator series, p = 1..5."""
    return {p: extend(anharmonic_series(p)) for p in range(1, 6)}


@pytest.fixture(scope="session")
def zero_dim_ext():
    return extend(zero_dim_series(1))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
