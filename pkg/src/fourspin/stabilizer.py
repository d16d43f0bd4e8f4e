"""Stabilizer-circuit output states and their evolution before ancilla readout.

The circuit output is taken as given:

    A+ |Phi+>|dd> + B+ |Psi+>|du> + A- |Phi->|ud> + B- |Psi->|uu>

Each Bell scenario sets one amplitude to one. Probabilities come from the
generic evolve-and-project path; ``closed_form_probabilities`` evaluates the
same quantities through the scalar coefficient functions and serves as a
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import hilbert
from .evolution import rotating_frame, trajectory
from .measurement import Outcome, outcome_probabilities
from .model import ModelParams, analytic_spectrum, require_symmetric


@dataclass(frozen=True)
class StabilizerAmplitudes:
    a_plus: complex = 0.0
    b_plus: complex = 0.0
    a_minus: complex = 0.0
    b_minus: complex = 0.0

    def __post_init__(self):
        norm = sum(abs(x) ** 2 for x in self.as_tuple())
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"stabilizer amplitudes not normalized (sum |.|^2 = {norm})")

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.a_plus, self.b_plus, self.a_minus, self.b_minus)


class Scenario(Enum):
    PHI_PLUS = "phi+"
    PSI_PLUS = "psi+"
    PHI_MINUS = "phi-"
    PSI_MINUS = "psi-"

    @property
    def amplitudes(self) -> StabilizerAmplitudes:
        slot = list(Scenario).index(self)
        vals = [0.0] * 4
        vals[slot] = 1.0
        return StabilizerAmplitudes(*vals)

    @property
    def target(self) -> np.ndarray:
        return {
            Scenario.PHI_PLUS: hilbert.PHI_PLUS,
            Scenario.PSI_PLUS: hilbert.PSI_PLUS,
            Scenario.PHI_MINUS: hilbert.PHI_MINUS,
            Scenario.PSI_MINUS: hilbert.PSI_MINUS,
        }[self]

    @property
    def correct_outcome(self) -> Outcome:
        """Ancilla result the stable state yields with certainty at t = 0."""
        return Outcome(list(Scenario).index(self) + 1)


def stabilizer_state(amps: StabilizerAmplitudes) -> np.ndarray:
    bells = (hilbert.PHI_PLUS, hilbert.PSI_PLUS, hilbert.PHI_MINUS, hilbert.PSI_MINUS)
    return sum(
        a * np.kron(bell, anc)
        for a, bell, anc in zip(amps.as_tuple(), bells, hilbert.PAIR_BASIS)
    ).astype(complex)


def time_grid(params: ModelParams, start: float = 0.0, stop: float | None = None,
              samples: int = 2001) -> np.ndarray:
    """Default grid: 2001 points over two revival periods."""
    if stop is None:
        stop = 2 * params.revival_time
    if samples < 2 or not stop > start >= 0:
        raise ValueError("need samples >= 2 and stop > start >= 0")
    return np.linspace(start, stop, samples)


@dataclass(frozen=True)
class ScenarioTrace:
    scenario: Scenario
    times: np.ndarray
    probabilities: np.ndarray  # (T, 4): dd, du, ud, uu
    fidelity: np.ndarray  # nan where the correct outcome is impossible
    frame: str

    @property
    def p_dd(self):
        return self.probabilities[:, 0]

    @property
    def p_du(self):
        return self.probabilities[:, 1]

    @property
    def p_ud(self):
        return self.probabilities[:, 2]

    @property
    def p_uu(self):
        return self.probabilities[:, 3]

    @property
    def correct_probability(self) -> np.ndarray:
        return self.probabilities[:, self.scenario.correct_outcome - 1]


def run_scenario(which: Scenario | str, times, params: ModelParams,
                 frame: str = "rotating") -> ScenarioTrace:
    which = Scenario(which)
    if frame not in ("lab", "rotating"):
        raise ValueError(f"unknown frame {frame!r}")
    times = np.asarray(times, dtype=float)
    states = trajectory(stabilizer_state(which.amplitudes), times, params)
    if frame == "rotating":
        states = rotating_frame(states, times, params)
    probs = outcome_probabilities(states)

    l = which.correct_outcome - 1
    branch = states.reshape(-1, 4, 4)[:, :, l]
    weight = np.sum(np.abs(branch) ** 2, axis=1)
    overlap = np.abs(branch @ which.target.conj())
    with np.errstate(divide="ignore", invalid="ignore"):
        fid = np.where(weight >= 1e-14, overlap / np.sqrt(weight), np.nan)
    fid = np.minimum(fid, 1.0)
    return ScenarioTrace(which, times, probs, fid, frame)


def refine_first_peak(which: Scenario | str, column: int, times, values,
                      params: ModelParams, frame: str = "rotating", points: int = 2001):
    """Location and height of the first local maximum of a probability trace.

    The coarse maximum on ``times`` is re-sampled on ``points`` points within
    one grid step either side, through the same evolve-and-project path.
    """
    values = np.asarray(values)
    for i in range(1, len(values) - 1):
        if values[i] > 1e-9 and values[i] >= values[i - 1] and values[i] >= values[i + 1]:
            break
    else:
        raise ValueError("trace has no interior local maximum")
    step = times[1] - times[0]
    fine = np.linspace(times[i] - step, times[i] + step, points)
    local = run_scenario(which, fine, params, frame).probabilities[:, column]
    j = int(np.argmax(local))
    return float(fine[j]), float(local[j])


class CoefficientFunctions:
    """Scalar time functions from which the scenario probabilities follow."""

    def __init__(self, params: ModelParams):
        require_symmetric(params)
        self.params = params
        self.energies = analytic_spectrum(params)

    def _ph(self, k, t):
        return np.exp(-1j * self.energies[k - 1] * np.asarray(t, dtype=float))

    def alpha(self, t):
        return self._ph(8, t) / 3 + self._ph(10, t) / 2 + self._ph(14, t) / 6

    def beta(self, t):
        return (self._ph(8, t) / 3 - self._ph(10, t) / 2 + self._ph(14, t) / 6) / hilbert.SQRT2

    def gamma(self, t):
        return self._ph(6, t) / 2 + self._ph(8, t) / 6 + self._ph(14, t) / 3

    def mu(self, t):
        return -self._ph(6, t) / 2 + self._ph(8, t) / 6 + self._ph(14, t) / 3

    def chi_plus(self, t):
        return 2 * self._ph(5, t) + self._ph(9, t) + self._ph(13, t)

    def chi_minus(self, t):
        return 2 * self._ph(7, t) + self._ph(11, t) + self._ph(15, t)

    def nu_plus(self, t):
        return 2 * self._ph(5, t) - self._ph(9, t) - self._ph(13, t)

    def nu_minus(self, t):
        return 2 * self._ph(7, t) - self._ph(11, t) - self._ph(15, t)

    def gap(self, k_hi: int, k_lo: int) -> float:
        return self.energies[k_hi - 1] - self.energies[k_lo - 1]


def closed_form_probabilities(which: Scenario | str, t, params: ModelParams) -> np.ndarray:
    """(p_dd, p_du, p_ud, p_uu) from the coefficient functions; shape (..., 4)."""
    which = Scenario(which)
    f = CoefficientFunctions(params)
    t = np.asarray(t, dtype=float)
    sq = lambda z: np.abs(z) ** 2  # noqa: E731
    if which is Scenario.PHI_PLUS:
        side = (1 - np.cos(f.gap(14, 8) * t)) / 18
        cols = [(1 + sq(f.alpha(t))) / 2, side, side, sq(f.beta(t))]
    elif which is Scenario.PSI_PLUS:
        side = (1 - np.cos(f.gap(14, 8) * t)) / 9
        cols = [side, sq(f.gamma(t)), sq(f.mu(t)), side]
    elif which is Scenario.PHI_MINUS:
        cols = [
            (1 - np.cos(f.gap(15, 11) * t)) / 8,
            (sq(f.nu_plus(t)) + sq(f.nu_minus(t))) / 32,
            (sq(f.chi_plus(t)) + sq(f.chi_minus(t))) / 32,
            (1 - np.cos(f.gap(13, 9) * t)) / 8,
        ]
    else:
        zero = np.zeros_like(t)
        cols = [zero, zero, zero, zero + 1.0]
    return np.stack(cols, axis=-1)


def phi_plus_fidelity_closed_form(t, params: ModelParams, frame: str = "rotating"):
    """F for the Phi+ branch: sqrt(1/2 [1 + 2 Re(alpha e^{iE t}) / (1 + |alpha|^2)]).

    E is E_16 in the lab frame and J in the rotating frame.
    """
    f = CoefficientFunctions(params)
    t = np.asarray(t, dtype=float)
    e16 = f.energies[15] if frame == "lab" else params.coupling
    a = f.alpha(t)
    cross = 2 * np.real(a * np.exp(1j * e16 * t))
    return np.sqrt(0.5 * (1 + cross / (1 + np.abs(a) ** 2)))


def phi_minus_fidelity_closed_form(t, params: ModelParams, frame: str = "rotating"):
    f = CoefficientFunctions(params)
    t = np.asarray(t, dtype=float)
    cp, cm = f.chi_plus(t), f.chi_minus(t)
    if frame == "rotating":
        w = params.omega
        cp, cm = np.exp(1j * w * t) * cp, np.exp(-1j * w * t) * cm
    p = (np.abs(cp) ** 2 + np.abs(cm) ** 2) / 32
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.abs(cp + cm) / (8 * np.sqrt(p))
