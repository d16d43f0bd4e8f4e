"""Free evolution in the symmetric case, built from the analytic eigenbasis."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import build_eigenbasis, magnetization
from .linalg import expm_taylor
from .model import ModelParams, analytic_spectrum, hamiltonian_matrix, require_symmetric


@lru_cache(maxsize=1)
def _basis_columns() -> np.ndarray:
    cols = build_eigenbasis().columns
    cols.setflags(write=False)
    return cols


@dataclass(frozen=True)
class Propagator:
    time: float
    matrix: np.ndarray
    frame: str = "lab"

    def block(self, l: int, n: int) -> np.ndarray:
        """4x4 data block W_{j l - m n} (rows j, columns m), ancilla l <- n."""
        return self.matrix[l - 1::4, n - 1::4]


def evolve(state, t: float, params: ModelParams) -> np.ndarray:
    return trajectory(state, np.array([t], dtype=float), params)[0]


def trajectory(state, times, params: ModelParams) -> np.ndarray:
    """States at every entry of ``times``, shape (len(times), 16)."""
    require_symmetric(params)
    cols = _basis_columns()
    energies = analytic_spectrum(params)
    coeffs = cols.T @ np.asarray(state, dtype=complex)
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), energies))
    return (phases * coeffs) @ cols.T


def propagator_matrix(t: float, params: ModelParams) -> Propagator:
    require_symmetric(params)
    cols = _basis_columns()
    phases = np.exp(-1j * analytic_spectrum(params) * t)
    return Propagator(time=t, matrix=(cols * phases) @ cols.T)


def propagator_oracle(t: float, params: ModelParams) -> np.ndarray:
    """exp(-iHt) by scaling and squaring, without any eigenbasis."""
    return expm_taylor(-1j * t * hamiltonian_matrix(params))


def rotating_frame(obj, t, params: ModelParams):
    """Conjugate into the frame co-rotating at omega: apply exp(+i omega J_z t).

    ``obj`` is a register state (16,), a stack of states (T, 16) with ``t`` of
    length T, or a 16x16 propagator U(t), returned as R(t) U(t) so that it
    maps initial states to rotating-frame states.
    """
    m = magnetization()
    obj = np.asarray(obj, dtype=complex)
    t = np.asarray(t, dtype=float)
    if obj.shape == (16, 16):
        return np.exp(1j * params.omega * m * t)[:, None] * obj
    phase = np.exp(1j * params.omega * np.multiply.outer(t, m))
    return obj * phase


def energy_expectation(states, params: ModelParams) -> np.ndarray:
    h = hamiltonian_matrix(params)
    states = np.atleast_2d(states)
    return np.einsum("ti,ij,tj->t", states.conj(), h, states).real
