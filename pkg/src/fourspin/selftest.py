"""Invariant suite behind ``fourspin selftest``; one PASS/FAIL line per check."""

from __future__ import annotations

import time

import numpy as np

from . import gates, hilbert
from .evolution import energy_expectation, propagator_matrix, propagator_oracle, trajectory
from .measurement import ancilla_projectors
from .model import (
    J_HIGH,
    J_LOW,
    MIXING_BLOCKS,
    ModelParams,
    analytic_spectrum,
    block_leakage,
    detuned_hamiltonian_elements,
    eigenbasis_hamiltonian,
    hamiltonian_matrix,
    numeric_diagonalize,
)
from .stabilizer import (
    Scenario,
    closed_form_probabilities,
    refine_first_peak,
    run_scenario,
    time_grid,
)

OMEGA = 18.5


def _max(x) -> float:
    return float(np.max(np.abs(x)))


def check_eigenbasis():
    e = hilbert.build_eigenbasis().columns
    dev = _max(e.T @ e - np.eye(16))
    return dev < 1e-12, f"gram deviation {dev:.2e}"


def check_projectors():
    ps = ancilla_projectors()
    dev = max(_max(a @ b - (a if i == j else 0 * a))
              for i, a in enumerate(ps) for j, b in enumerate(ps))
    dev = max(dev, _max(sum(ps) - np.eye(16)))
    return dev < 1e-14, f"projector algebra {dev:.2e}"


def check_spectrum():
    params = ModelParams(OMEGA, coupling=J_HIGH)
    start = time.perf_counter()
    numeric = numeric_diagonalize(hamiltonian_matrix(params)).energies
    elapsed = time.perf_counter() - start
    dev = _max(np.sort(analytic_spectrum(params)) - numeric)
    return dev < 1e-10 and elapsed < 1.0, f"max deviation {dev:.2e} in {elapsed:.3f} s"


def check_traces():
    worst_sum = worst_cf = 0.0
    for j in (J_LOW, J_HIGH):
        params = ModelParams(OMEGA, coupling=j)
        ts = time_grid(params)
        for sc in Scenario:
            tr = run_scenario(sc, ts, params)
            worst_sum = max(worst_sum, _max(tr.probabilities.sum(axis=1) - 1))
            worst_cf = max(worst_cf, _max(tr.probabilities - closed_form_probabilities(sc, ts, params)))
    ok = worst_sum < 1e-12 and worst_cf < 1e-12
    return ok, f"sum rule {worst_sum:.2e}, closed form {worst_cf:.2e}"


def check_scenario_values():
    params = ModelParams(OMEGA, coupling=J_HIGH)
    ts = time_grid(params)
    phi_p = run_scenario(Scenario.PHI_PLUS, ts, params)
    psi_p = run_scenario(Scenario.PSI_PLUS, ts, params)
    psi_m = run_scenario(Scenario.PSI_MINUS, ts, params)
    phi_m = run_scenario(Scenario.PHI_MINUS, ts, params)
    step = ts[1] - ts[0]
    t1, p1 = refine_first_peak(Scenario.PHI_PLUS, 1, ts, phi_p.p_du, params)
    _, p2 = refine_first_peak(Scenario.PSI_PLUS, 0, ts, psi_p.p_dd, params)
    d1 = abs(p1 - 1 / 9)
    d2 = abs(p2 - 2 / 9)
    t_peak = np.pi / (3 * params.coupling)
    d3 = _max(psi_m.p_uu - 1)
    fid = phi_m.fidelity[~np.isnan(phi_m.fidelity)]
    d4 = _max(fid - 1)
    ok = d1 < 1e-10 and abs(t1 - t_peak) <= step and d2 < 1e-10 and d3 < 1e-12 and d4 < 1e-10
    return ok, f"1/9 {d1:.1e}, 2/9 {d2:.1e}, psi- {d3:.1e}, phi- fidelity {d4:.1e}"


def check_revival():
    dev = 0.0
    for j in (J_LOW, J_HIGH):
        params = ModelParams(OMEGA, coupling=j)
        for sc in Scenario:
            tr = run_scenario(sc, [params.revival_time], params)
            dev = max(dev, abs(tr.correct_probability[0] - 1))
    return dev < 1e-9, f"revival deviation {dev:.2e}"


def check_gates():
    params = ModelParams(OMEGA, coupling=J_LOW)
    rng = np.random.default_rng(2024)
    worst_p = worst_u = 0.0
    for n in (1, 2, 3, 4):
        for _ in range(100):
            a = gates.haar_random_state(rng)
            p = gates.probability_surface(a, n, [params.revival_time], params).probabilities[0]
            worst_p = max(worst_p, abs(p[n - 1] - 1))
        worst_u = max(worst_u, _max(gates.extract_gate(n, params).matrix
                                    - gates.revival_gate(n, params)))
        if n <= 2:
            worst_u = max(worst_u, _max(gates.extract_gate(n, params).matrix
                                        - gates.phase_chain_gate(n, params)))
    dec = gates.decomposition_check(params)
    ok = worst_p < 1e-9 and worst_u < 1e-9 and dec.passed
    return ok, (f"p_nn {worst_p:.1e}, gates {worst_u:.1e}, "
                f"C0CuC0 {dec.cnot_cu_cnot:.1e}, RzRz {dec.rz_rz:.1e}")


def check_detuned():
    basis = hilbert.build_eigenbasis()
    dev = leak = 0.0
    for ratio in (1e-3, 1e-2):
        params = ModelParams(OMEGA, OMEGA * (1 - ratio), J_HIGH)
        full = numeric_diagonalize(hamiltonian_matrix(params))
        model = numeric_diagonalize(detuned_hamiltonian_elements(params))
        dev = max(dev, _max(full.energies - model.energies))
        dev = max(dev, _max(eigenbasis_hamiltonian(params, basis) - detuned_hamiltonian_elements(params)))
        leak = max(leak, block_leakage(basis.columns.T @ full.vectors, full.energies))
    blocks = " ".join(str(b) for b in MIXING_BLOCKS)
    return dev < 1e-10 and leak < 1e-12, f"deviation {dev:.2e}, leakage {leak:.2e} for {blocks}"


def check_propagator():
    params = ModelParams(OMEGA, coupling=J_HIGH)
    rng = np.random.default_rng(7)
    dev = 0.0
    for t in rng.uniform(0, 2 * params.revival_time, 20):
        dev = max(dev, _max(propagator_matrix(t, params).matrix - propagator_oracle(t, params)))
    return dev < 1e-9, f"spectral vs Taylor expm {dev:.2e}"


def check_energy_conservation():
    params = ModelParams(OMEGA, coupling=J_HIGH)
    psi0 = hilbert.tensor_pair_states(gates.haar_random_state(np.random.default_rng(3)),
                                      hilbert.C_DU)
    states = trajectory(psi0, time_grid(params, samples=201), params)
    e = energy_expectation(states, params)
    return _max(e - e[0]) < 1e-11, f"energy drift {_max(e - e[0]):.2e}"


CHECKS = [
    ("eigenbasis orthonormal", check_eigenbasis),
    ("ancilla projector algebra", check_projectors),
    ("spectrum oracle", check_spectrum),
    ("probability sum rule / closed forms", check_traces),
    ("scenario extrema and fidelities", check_scenario_values),
    ("revival at 2pi/J", check_revival),
    ("gate extraction", check_gates),
    ("detuned blocks", check_detuned),
    ("propagator oracle", check_propagator),
    ("energy conservation", check_energy_conservation),
]


def run_all(stream=None) -> bool:
    import sys

    stream = stream or sys.stdout
    start = time.perf_counter()
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= bool(ok)
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}", file=stream)
    print(f"{'ALL PASS' if all_ok else 'FAILURES'} in {time.perf_counter() - start:.2f} s",
          file=stream)
    return all_ok
