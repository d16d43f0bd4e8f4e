import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from fourspin import hilbert
from fourspin.evolution import (
    energy_expectation,
    evolve,
    propagator_matrix,
    propagator_oracle,
    rotating_frame,
    trajectory,
)
from fourspin.gates import haar_random_state
from fourspin.model import ModelParams, hamiltonian_matrix
from fourspin.stabilizer import CoefficientFunctions, Scenario, stabilizer_state

times = st.floats(0, 200, allow_nan=False)


def random_register(seed):
    return haar_random_state(np.random.default_rng(seed), 16)


def test_evolve_identity_at_zero(params):
    psi = random_register(0)
    np.testing.assert_allclose(evolve(psi, 0.0, params), psi, atol=1e-15)


def test_e2_picks_up_zeeman_phase(params, basis):
    t = 3.7
    np.testing.assert_allclose(evolve(basis[2], t, params),
                               np.exp(-1j * params.omega * t) * basis[2], atol=1e-13)


def test_psi_minus_global_phase_only(params):
    psi = stabilizer_state(Scenario.PSI_MINUS.amplitudes)
    for t in (0.5, 11.0, 90.0):
        out = evolve(psi, t, params)
        assert abs(abs(np.vdot(psi, out)) - 1) < 1e-12


def test_evolve_rejects_detuned():
    with pytest.raises(ValueError):
        evolve(random_register(0), 1.0, ModelParams(18.5, 18.0, 0.8))


@settings(max_examples=30, deadline=None)
@given(times, times, st.integers(0, 1000))
def test_group_law_and_norm(t1, t2, seed):
    p = ModelParams(18.5, coupling=0.8)
    psi = random_register(seed)
    a = evolve(evolve(psi, t1, p), t2, p)
    b = evolve(psi, t1 + t2, p)
    assert np.abs(a - b).max() < 1e-11
    assert abs(np.linalg.norm(b) - 1) < 1e-12


def test_energy_conservation(params):
    psi = random_register(4)
    states = trajectory(psi, np.linspace(0, 2 * params.revival_time, 301), params)
    e = energy_expectation(states, params)
    assert np.abs(e - e[0]).max() < 1e-11


def test_propagator_identity_symmetric_unitary(params):
    assert np.abs(propagator_matrix(0.0, params).matrix - np.eye(16)).max() < 1e-15
    for t in (0.3, 7.0, 55.5):
        u = propagator_matrix(t, params).matrix
        assert np.abs(u - u.T).max() < 1e-12
        assert np.abs(u.conj().T @ u - np.eye(16)).max() < 1e-12
        np.testing.assert_allclose(np.linalg.norm(u, axis=0), 1, atol=1e-12)


@pytest.mark.parametrize("t", [0.1, 2.5, 9.9, 15.0])
def test_propagator_matches_two_oracles(params_high, t):
    u = propagator_matrix(t, params_high).matrix
    assert np.abs(u - propagator_oracle(t, params_high)).max() < 1e-9
    ref = scipy.linalg.expm(-1j * t * hamiltonian_matrix(params_high))
    assert np.abs(u - ref).max() < 1e-9


def test_propagator_at_revival_is_block_diagonal(params):
    prop = propagator_matrix(params.revival_time, params)
    for l in range(1, 5):
        for n in range(1, 5):
            b = prop.block(l, n)
            if l == n:
                assert np.abs(b - np.diag(np.diag(b))).max() < 1e-9
                np.testing.assert_allclose(np.abs(np.diag(b)), 1, atol=1e-9)
            else:
                assert np.abs(b).max() < 1e-9


def test_rotating_frame_identity_at_zero(params):
    psi = random_register(1)
    np.testing.assert_array_equal(rotating_frame(psi, 0.0, params), psi)
    u = propagator_matrix(1.0, params).matrix
    np.testing.assert_array_equal(rotating_frame(u, 0.0, params), u)


def test_rotating_frame_removes_zeeman(params):
    # R(t) U(t) = exp(-i H_int t) does not depend on omega
    t = 2.3
    a = rotating_frame(propagator_matrix(t, params).matrix, t, params)
    other = ModelParams(3.0, coupling=params.coupling)
    b = rotating_frame(propagator_matrix(t, other).matrix, t, other)
    assert np.abs(a - b).max() < 1e-12
    psi = random_register(2)
    np.testing.assert_allclose(a @ psi, rotating_frame(evolve(psi, t, params), t, params), atol=1e-13)


def test_rotated_chi_functions_coincide(params):
    f = CoefficientFunctions(params)
    t = np.linspace(0, 3 * params.revival_time, 101)
    chi_p = np.exp(1j * params.omega * t) * f.chi_plus(t)
    chi_m = np.exp(-1j * params.omega * t) * f.chi_minus(t)
    np.testing.assert_allclose(chi_p, chi_m, atol=1e-12)
