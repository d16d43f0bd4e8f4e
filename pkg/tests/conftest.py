import numpy as np
import pytest

from fourspin.hilbert import build_eigenbasis
from fourspin.model import J_HIGH, J_LOW, ModelParams

OMEGA = 18.5


@pytest.fixture(scope="session")
def basis():
    return build_eigenbasis()


@pytest.fixture(params=[J_LOW, J_HIGH], ids=["J=0.08", "J=0.8"])
def params(request):
    return ModelParams(OMEGA, coupling=request.param)


@pytest.fixture
def params_high():
    return ModelParams(OMEGA, coupling=J_HIGH)


@pytest.fixture
def params_low():
    return ModelParams(OMEGA, coupling=J_LOW)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    """Record one result line per acceptance criterion for the terminal summary."""

    def log(name, ok, detail):
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
