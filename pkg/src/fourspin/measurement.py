"""Projective measurement of the ancilla pair and data-state fidelities."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .hilbert import PAIR_BASIS

COLLAPSE_THRESHOLD = 1e-14


class Outcome(IntEnum):
    """Ancilla result l, ordered like the pair computational basis."""

    DD = 1
    DU = 2
    UD = 3
    UU = 4

    @property
    def label(self) -> str:
        return {1: "dd", 2: "du", 3: "ud", 4: "uu"}[self.value]


def ancilla_projectors() -> list[np.ndarray]:
    return [np.kron(np.eye(4), np.outer(c, c)).astype(complex) for c in PAIR_BASIS]


def outcome_probabilities(states) -> np.ndarray:
    """p_l for one state (16,) -> (4,), or a stack (T, 16) -> (T, 4)."""
    states = np.asarray(states)
    blocks = states.reshape(states.shape[:-1] + (4, 4))
    return np.sum(np.abs(blocks) ** 2, axis=-2)


def collapse(state, outcome: int) -> np.ndarray | None:
    """Normalized data state after finding ancilla result ``outcome``.

    Returns None when the outcome is impossible (probability below threshold).
    """
    block = np.asarray(state).reshape(4, 4)[:, int(outcome) - 1]
    p = float(np.vdot(block, block).real)
    if p < COLLAPSE_THRESHOLD:
        return None
    return block / np.sqrt(p)


@dataclass(frozen=True)
class MeasurementResult:
    probabilities: np.ndarray
    collapsed_data_states: tuple

    def post_state(self, outcome: int) -> np.ndarray | None:
        data = self.collapsed_data_states[int(outcome) - 1]
        if data is None:
            return None
        return np.kron(data, PAIR_BASIS[int(outcome) - 1])


def measure(state) -> MeasurementResult:
    state = np.asarray(state, dtype=complex)
    probs = outcome_probabilities(state)
    return MeasurementResult(
        probabilities=probs,
        collapsed_data_states=tuple(collapse(state, l) for l in Outcome),
    )


def fidelity(data_state, target) -> float:
    """|<target|state>|, insensitive to global phase."""
    return float(min(1.0, abs(np.vdot(target, data_state))))
