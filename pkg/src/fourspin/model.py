"""Exchange Hamiltonian of two data spins each coupled to two ancilla spins.

Frequencies are angular frequencies in rad/ns and hbar = 1, so a coupling of
0.8 rad/ns gives a revival time 2*pi/0.8 ~ 7.85 ns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hilbert
from .hilbert import SQRT3, SQRT6, EigenBasisTable, build_eigenbasis
from .linalg import jacobi_eigh

# preset couplings, rad/ns
J_LOW = 0.08
J_HIGH = 0.8
OMEGA_DEFAULT = 18.5

# e-basis blocks (1-based) coupled by detuning
MIXING_BLOCKS = ((8, 10, 14), (9, 13), (11, 15))


@dataclass(frozen=True)
class ModelParams:
    omega: float = OMEGA_DEFAULT
    omega_tilde: float | None = None
    coupling: float = J_LOW

    def __post_init__(self):
        if self.omega_tilde is None:
            object.__setattr__(self, "omega_tilde", self.omega)
        if not (math.isfinite(self.omega) and math.isfinite(self.omega_tilde)):
            raise ValueError("frequencies must be finite")
        if not math.isfinite(self.coupling) or self.coupling < 0:
            raise ValueError("coupling must be finite and non-negative")

    @property
    def delta_omega(self) -> float:
        return self.omega - self.omega_tilde

    @property
    def symmetric(self) -> bool:
        return self.delta_omega == 0.0

    @property
    def revival_time(self) -> float:
        """2*pi/J, the instant at which every exchange phase returns to one."""
        if self.coupling == 0:
            raise ValueError("revival time undefined for zero coupling")
        return 2 * math.pi / self.coupling


def require_symmetric(params: ModelParams) -> None:
    if not params.symmetric:
        raise ValueError(
            f"operation requires omega == omega_tilde (delta_omega = {params.delta_omega})"
        )


def hamiltonian_matrix(params: ModelParams) -> np.ndarray:
    ez = hilbert.embed
    h = params.omega * (ez(hilbert.SZ, 0) + ez(hilbert.SZ, 1))
    h = h + params.omega_tilde * (ez(hilbert.SZ, 2) + ez(hilbert.SZ, 3))
    data = [sum(hilbert.spin_vector(s)[i] for s in (0, 1)) for i in range(3)]
    anc = [sum(hilbert.spin_vector(s)[i] for s in (2, 3)) for i in range(3)]
    h = h + params.coupling * sum(d @ a for d, a in zip(data, anc))
    return h


def analytic_spectrum(params: ModelParams) -> np.ndarray:
    """Energies h_1..h_16 of the eigenbasis, in basis order (not sorted)."""
    require_symmetric(params)
    w, j = params.omega, params.coupling
    return np.array([
        0.0, w, 0.0, -w, w, 0.0, -w,
        -2 * j, w - j, -j, -w - j,
        2 * w + j, w + j, j, -w + j, -2 * w + j,
    ])


def detuned_hamiltonian_elements(params: ModelParams) -> np.ndarray:
    """H in eigenbasis coordinates from the closed-form detuned matrix elements."""
    w, j, dw = params.omega, params.coupling, params.delta_omega
    diag = np.array([
        0.0, w - dw, 0.0, -(w - dw), w, 0.0, -w,
        -2 * j, (w - dw / 2) - j, -j, -(w - dw / 2) - j,
        2 * w - dw + j, (w - dw / 2) + j, j, -(w - dw / 2) + j, -2 * w + dw + j,
    ])
    h = np.diag(diag)
    for (a, b), val in {
        (8, 10): SQRT6 / 3 * dw,
        (9, 13): dw / 2,
        (10, 14): SQRT3 / 3 * dw,
        (11, 15): dw / 2,
    }.items():
        h[a - 1, b - 1] = h[b - 1, a - 1] = val
    return h


@dataclass(frozen=True)
class SpectralDecomposition:
    energies: np.ndarray
    vectors: np.ndarray

    def residuals(self, op) -> np.ndarray:
        r = op @ self.vectors - self.vectors * self.energies
        return np.linalg.norm(r, axis=0)


def numeric_diagonalize(op, tol: float = 1e-10) -> SpectralDecomposition:
    """Brute-force spectrum of a Hermitian operator (cyclic Jacobi)."""
    w, v = jacobi_eigh(op, tol=tol)
    return SpectralDecomposition(energies=w, vectors=v)


def eigenbasis_hamiltonian(params: ModelParams, basis: EigenBasisTable | None = None) -> np.ndarray:
    """H conjugated into eigenbasis coordinates directly from the spin operators."""
    basis = basis or build_eigenbasis()
    return basis.to_eigen(hamiltonian_matrix(params))


def block_leakage(vectors_e: np.ndarray, energies: np.ndarray, cluster_tol: float = 1e-8) -> float:
    """Largest weight an eigen-subspace carries across the detuning blocks.

    ``vectors_e`` are eigenvectors in eigenbasis coordinates. Eigenvectors are
    grouped into degenerate clusters; each cluster projector must commute with
    every block projector (the blocks above plus the remaining singletons).
    """
    blocks = [list(b) for b in MIXING_BLOCKS]
    mixed = {k for b in MIXING_BLOCKS for k in b}
    blocks += [[k] for k in range(1, 17) if k not in mixed]
    leak = 0.0
    start = 0
    n = len(energies)
    while start < n:
        stop = start + 1
        while stop < n and energies[stop] - energies[stop - 1] < cluster_tol:
            stop += 1
        vs = vectors_e[:, start:stop]
        proj = vs @ vs.conj().T
        for b in blocks:
            q = np.zeros(16)
            q[[k - 1 for k in b]] = 1.0
            q = np.diag(q)
            leak = max(leak, float(np.abs(q @ proj @ (np.eye(16) - q)).max()))
        start = stop
    return leak
