"""Basis conventions for two data spins (1, 2) and two ancilla spins (a, b).

Single spin: index 0 is down, index 1 is up. A spin pair uses the
computational ordering c1 = dd, c2 = du, c3 = ud, c4 = uu. The four-spin
register is data-major: amplitude ``4*(k-1) + (l-1)`` belongs to
``|c_k>_12 (x) |c_l>_ab``, i.e. the Kronecker order is 1, 2, a, b.

The singlet is S = (|ud> - |du>)/sqrt(2), so that |du> = (|T0> - |S>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT6 = np.sqrt(6.0)

DIM = 16


class Spin(IntEnum):
    DOWN = 0
    UP = 1


# pair computational basis c1..c4
C_DD = np.array([1.0, 0.0, 0.0, 0.0])
C_DU = np.array([0.0, 1.0, 0.0, 0.0])
C_UD = np.array([0.0, 0.0, 1.0, 0.0])
C_UU = np.array([0.0, 0.0, 0.0, 1.0])
PAIR_BASIS = (C_DD, C_DU, C_UD, C_UU)

# singlet-triplet states in pair computational coordinates
SINGLET = np.array([0.0, -1.0, 1.0, 0.0]) / SQRT2
T_PLUS = C_UU.copy()
T_ZERO = np.array([0.0, 1.0, 1.0, 0.0]) / SQRT2
T_MINUS = C_DD.copy()

# data-qubit Bell states, unit norm
PHI_PLUS = (C_DD + C_UU) / SQRT2
PHI_MINUS = (C_DD - C_UU) / SQRT2
PSI_PLUS = (C_DU + C_UD) / SQRT2
PSI_MINUS = (C_DU - C_UD) / SQRT2

# single-spin operators (hbar = 1), basis (down, up)
SZ = np.diag([-0.5, 0.5]).astype(complex)
S_RAISE = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
S_LOWER = S_RAISE.T.copy()
SX = 0.5 * (S_RAISE + S_LOWER)
SY = (S_RAISE - S_LOWER) / 2j


def pair_basis_change() -> np.ndarray:
    """Orthogonal matrix taking pair computational coordinates to (S, T+, T0, T-).

    Rows are the singlet-triplet states, so ``M @ v`` gives the
    singlet-triplet coefficients of ``v`` and ``M.T`` maps back.
    """
    return np.array([SINGLET, T_PLUS, T_ZERO, T_MINUS])


def tensor_pair_states(data, ancilla) -> np.ndarray:
    data = np.asarray(data)
    ancilla = np.asarray(ancilla)
    if data.shape != (4,) or ancilla.shape != (4,):
        raise ValueError("pair states must have exactly 4 amplitudes")
    return np.kron(data, ancilla).astype(complex)


def product_index(k: int, l: int) -> int:
    """Register index of |c_k>_12 (x) |c_l>_ab, with k, l in 1..4."""
    return 4 * (k - 1) + (l - 1)


def embed(single: np.ndarray, slot: int) -> np.ndarray:
    """Lift a 2x2 operator onto spin ``slot`` (0=1, 1=2, 2=a, 3=b)."""
    factors = [np.eye(2, dtype=complex)] * 4
    factors[slot] = single
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def spin_vector(slot: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return embed(SX, slot), embed(SY, slot), embed(SZ, slot)


def total_sz(slots=(0, 1, 2, 3)) -> np.ndarray:
    return sum(embed(SZ, s) for s in slots)


def total_spin_squared(slots) -> np.ndarray:
    """(sum of spin vectors over ``slots``)^2."""
    comps = [sum(spin_vector(s)[i] for s in slots) for i in range(3)]
    return sum(c @ c for c in comps)


def magnetization() -> np.ndarray:
    """Total S_z eigenvalue of every computational basis state."""
    return np.real(np.diag(total_sz()))


@dataclass(frozen=True)
class EigenBasisTable:
    """Columns e_1..e_16 in register coordinates, with (j, m_j, s_12, s_ab)."""

    columns: np.ndarray
    quantum_numbers: tuple[tuple[int, int, int, int], ...]

    def __getitem__(self, k: int) -> np.ndarray:
        """The 1-based column e_k."""
        return self.columns[:, k - 1]

    def coefficients(self, state) -> np.ndarray:
        """<e_k|state> for k = 1..16 (columns are real)."""
        return self.columns.T @ np.asarray(state)

    def to_eigen(self, op) -> np.ndarray:
        return self.columns.T @ op @ self.columns


def build_eigenbasis() -> EigenBasisTable:
    k = np.kron
    cols = [
        k(SINGLET, SINGLET),
        k(SINGLET, T_PLUS),
        k(SINGLET, T_ZERO),
        k(SINGLET, T_MINUS),
        k(T_PLUS, SINGLET),
        k(T_ZERO, SINGLET),
        k(T_MINUS, SINGLET),
        (k(T_PLUS, T_MINUS) - k(T_ZERO, T_ZERO) + k(T_MINUS, T_PLUS)) / SQRT3,
        (k(T_PLUS, T_ZERO) - k(T_ZERO, T_PLUS)) / SQRT2,
        (k(T_PLUS, T_MINUS) - k(T_MINUS, T_PLUS)) / SQRT2,
        (k(T_ZERO, T_MINUS) - k(T_MINUS, T_ZERO)) / SQRT2,
        k(T_PLUS, T_PLUS),
        (k(T_PLUS, T_ZERO) + k(T_ZERO, T_PLUS)) / SQRT2,
        (k(T_PLUS, T_MINUS) + 2 * k(T_ZERO, T_ZERO) + k(T_MINUS, T_PLUS)) / SQRT6,
        (k(T_ZERO, T_MINUS) + k(T_MINUS, T_ZERO)) / SQRT2,
        k(T_MINUS, T_MINUS),
    ]
    qn = (
        (0, 0, 0, 0),
        (1, 1, 0, 1), (1, 0, 0, 1), (1, -1, 0, 1),
        (1, 1, 1, 0), (1, 0, 1, 0), (1, -1, 1, 0),
        (0, 0, 1, 1),
        (1, 1, 1, 1), (1, 0, 1, 1), (1, -1, 1, 1),
        (2, 2, 1, 1), (2, 1, 1, 1), (2, 0, 1, 1), (2, -1, 1, 1), (2, -2, 1, 1),
    )
    return EigenBasisTable(columns=np.array(cols).T, quantum_numbers=qn)
