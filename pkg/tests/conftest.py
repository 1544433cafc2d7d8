import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from scipy.stats import unitary_group

settings.register_profile(
    "lu", max_examples=50, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lu")

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_local_unitary(dims, rng):
    us = [unitary_group.rvs(d, random_state=rng) for d in dims]
    out = np.eye(1)
    for u in us:
        out = np.kron(out, u)
    return us, out


def random_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)
