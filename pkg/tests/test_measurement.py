import numpy as np
import pytest
import sympy as sp

from fourspin import hilbert
from fourspin.evolution import evolve, rotating_frame
from fourspin.gates import haar_random_state
from fourspin.hilbert import SINGLET, T_MINUS, T_ZERO, pair_basis_change
from fourspin.measurement import (
    Outcome,
    ancilla_projectors,
    collapse,
    fidelity,
    measure,
    outcome_probabilities,
)
from fourspin.stabilizer import (
    CoefficientFunctions,
    Scenario,
    phi_plus_fidelity_closed_form,
    stabilizer_state,
)


def test_projector_algebra():
    ps = ancilla_projectors()
    assert np.abs(sum(ps) - np.eye(16)).max() < 1e-14
    for i, a in enumerate(ps):
        assert np.abs(a - a.conj().T).max() == 0
        for j, b in enumerate(ps):
            ref = a if i == j else np.zeros_like(a)
            assert np.abs(a @ b - ref).max() < 1e-14


def test_projectors_in_singlet_triplet_coordinates():
    m = pair_basis_change()
    st = [m @ np.outer(c, c) @ m.T for c in hilbert.PAIR_BASIS]
    tm = m @ T_MINUS
    np.testing.assert_allclose(st[0], np.outer(tm, tm), atol=1e-15)
    v = m @ (T_ZERO - SINGLET)
    np.testing.assert_allclose(st[1], 0.5 * np.outer(v, v), atol=1e-15)
    v = m @ (T_ZERO + SINGLET)
    np.testing.assert_allclose(st[2], 0.5 * np.outer(v, v), atol=1e-15)
    # and the full operators are I (x) |c_l><c_l|
    for c, p in zip(hilbert.PAIR_BASIS, ancilla_projectors()):
        np.testing.assert_array_equal(p, np.kron(np.eye(4), np.outer(c, c)))


def test_probabilities_match_projector_expectations():
    psi = haar_random_state(np.random.default_rng(0), 16)
    expect = [np.vdot(psi, p @ psi).real for p in ancilla_projectors()]
    np.testing.assert_allclose(outcome_probabilities(psi), expect, atol=1e-15)


def test_psi_minus_always_uu(params):
    psi = stabilizer_state(Scenario.PSI_MINUS.amplitudes)
    for t in np.linspace(0, 100, 7):
        np.testing.assert_allclose(measure(evolve(psi, t, params)).probabilities, [0, 0, 0, 1],
                                   atol=1e-12)


def test_phi_plus_initial_and_evolved(params):
    psi = stabilizer_state(Scenario.PHI_PLUS.amplitudes)
    np.testing.assert_allclose(measure(psi).probabilities, [1, 0, 0, 0], atol=1e-15)
    f = CoefficientFunctions(params)
    for t in (0.7, 3.3, 20.0):
        p = measure(evolve(psi, t, params)).probabilities
        assert p[0] == pytest.approx(0.5 * (1 + abs(f.alpha(t)) ** 2), abs=1e-12)


def test_measure_collapse_and_stability():
    rng = np.random.default_rng(5)
    psi = haar_random_state(rng, 16)
    res = measure(psi)
    assert abs(res.probabilities.sum() - 1) < 1e-12
    for l in Outcome:
        post = res.post_state(l)
        assert abs(np.linalg.norm(res.collapsed_data_states[l - 1]) - 1) < 1e-12
        again = measure(post).probabilities
        assert again[l - 1] == pytest.approx(1.0, abs=1e-12)


def test_impossible_outcome_has_no_collapse():
    psi = hilbert.tensor_pair_states(hilbert.PHI_PLUS, hilbert.C_DD)
    res = measure(psi)
    assert res.collapsed_data_states[1] is None
    assert collapse(psi, Outcome.UU) is None
    assert res.post_state(Outcome.DU) is None


def test_fidelity_basics():
    v = haar_random_state(np.random.default_rng(1))
    assert fidelity(v, v) == pytest.approx(1.0)
    assert fidelity(np.exp(0.3j) * v, v) == pytest.approx(1.0)
    assert fidelity(hilbert.PHI_PLUS, hilbert.PHI_MINUS) == pytest.approx(0.0)


def test_phi_minus_rotating_fidelity_is_one(params):
    psi = stabilizer_state(Scenario.PHI_MINUS.amplitudes)
    for t in (0.0, 1.1, 5.0, 33.3):
        state = rotating_frame(evolve(psi, t, params), t, params)
        data = collapse(state, Outcome.UD)
        assert fidelity(data, hilbert.PHI_MINUS) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("frame", ["lab", "rotating"])
def test_phi_plus_closed_form_fidelity(params, frame):
    psi = stabilizer_state(Scenario.PHI_PLUS.amplitudes)
    ts = np.linspace(0, 2 * params.revival_time, 97)
    closed = phi_plus_fidelity_closed_form(ts, params, frame)
    for t, fc in zip(ts, closed):
        state = evolve(psi, t, params)
        if frame == "rotating":
            state = rotating_frame(state, t, params)
        assert fidelity(collapse(state, Outcome.DD), hilbert.PHI_PLUS) == pytest.approx(fc, abs=1e-10)


def test_phi_plus_fidelity_form_symbolic():
    """Overlap of (alpha T+ + e T-)/norm with Phi+, derived symbolically."""
    ar, ai, th = sp.symbols("a_r a_i theta", real=True)
    a = ar + sp.I * ai
    e = sp.exp(-sp.I * th)  # the T- phase, unit modulus
    norm2 = sp.Abs(a) ** 2 + 1
    overlap = (a + e) / sp.sqrt(2)
    f2 = sp.simplify(sp.expand(overlap * sp.conjugate(overlap)) / norm2)
    closed = sp.Rational(1, 2) * (1 + (a * sp.exp(sp.I * th) + sp.conjugate(a) * sp.exp(-sp.I * th)) / norm2)
    assert sp.simplify(sp.expand_complex(f2 - closed)) == 0
    # stable state at t = 0: alpha = 1, theta = 0 -> F = 1; outer 1/2 would give sqrt(2)/2
    assert sp.sqrt(closed.subs({ar: 1, ai: 0, th: 0})) == 1
