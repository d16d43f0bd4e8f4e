"""Command-line front end: spectra, Bell-scenario traces, gate extraction, self-test."""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .gates import (
    GateExtractionError,
    decomposition_check,
    extract_gate,
    gate_angle,
    haar_random_state,
    phase_chain_gate,
    probability_surface,
    revival_gate,
    wrap_phase,
    unitarity_constraint,
)
from .hilbert import build_eigenbasis
from .linalg import ConvergenceError
from .model import (
    J_HIGH,
    J_LOW,
    MIXING_BLOCKS,
    OMEGA_DEFAULT,
    ModelParams,
    analytic_spectrum,
    block_leakage,
    detuned_hamiltonian_elements,
    hamiltonian_matrix,
    numeric_diagonalize,
)
from .stabilizer import Scenario, run_scenario, time_grid

PRESETS = {"low": J_LOW, "high": J_HIGH}


def fmt(x) -> str:
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return "nan"
    return format(float(x), ".17g")


def _json_num(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    return None if np.isnan(x) else float(fmt(x))


@dataclass
class RunConfig:
    command: str
    omega: float = OMEGA_DEFAULT
    omega_tilde: float | None = None
    coupling: float = J_LOW
    t_start: float = 0.0
    t_stop: float | None = None
    samples: int = 2001
    frame: str = "rotating"
    scenario: str = "phi+"
    ancilla_n: int = 1
    seed: int = 0
    out: str | None = None
    format: str = "csv"
    alpha: str | None = None
    check: bool = False

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("--samples must be at least 2")
        if self.t_start < 0 or (self.t_stop is not None and not self.t_stop > self.t_start):
            raise ValueError("need stop > start >= 0")

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.omega, self.omega_tilde, self.coupling)

    def times(self) -> np.ndarray:
        return time_grid(self.params, self.t_start, self.t_stop, self.samples)


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(fh, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])


def cmd_spectrum(cfg: RunConfig) -> int:
    params = cfg.params
    h = hamiltonian_matrix(params)
    numeric = numeric_diagonalize(h)
    payload = {"params": asdict(params), "symmetric": params.symmetric}
    if params.symmetric:
        analytic = analytic_spectrum(params)
        order = np.argsort(analytic, kind="stable")
        matched = np.empty(16)
        matched[order] = numeric.energies
        header = ["k", "analytic", "numeric", "deviation"]
        rows = [(k + 1, analytic[k], matched[k], abs(analytic[k] - matched[k])) for k in range(16)]
    else:
        block = numeric_diagonalize(detuned_hamiltonian_elements(params))
        header = ["rank", "numeric", "eigenbasis_model", "deviation"]
        rows = [(i + 1, a, b, abs(a - b)) for i, (a, b) in
                enumerate(zip(numeric.energies, block.energies))]
        basis = build_eigenbasis()
        payload["mixing_blocks"] = [list(b) for b in MIXING_BLOCKS]
        payload["block_leakage"] = block_leakage(basis.columns.T @ numeric.vectors, numeric.energies)
    max_dev = max(r[3] for r in rows)
    payload["max_deviation"] = max_dev

    with _sink(cfg.out) as fh:
        if cfg.format == "json":
            payload["rows"] = [dict(zip(header, map(_json_num, r))) for r in rows]
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        else:
            _write_csv(fh, header, rows)
    print(f"max deviation {fmt(max_dev)}", file=sys.stderr)
    if not params.symmetric:
        blocks = " ".join("{" + ",".join(map(str, b)) + "}" for b in MIXING_BLOCKS)
        print(f"mixing blocks {blocks}; leakage {fmt(payload['block_leakage'])}", file=sys.stderr)
    return 0


def cmd_bell_trace(cfg: RunConfig) -> int:
    trace = run_scenario(Scenario(cfg.scenario), cfg.times(), cfg.params, cfg.frame)
    header = ["t_ns", "p_dd", "p_du", "p_ud", "p_uu", "fidelity"]
    table = np.column_stack([trace.times, trace.probabilities, trace.fidelity])
    with _sink(cfg.out) as fh:
        if cfg.format == "json":
            json.dump({
                "scenario": trace.scenario.value,
                "frame": trace.frame,
                "params": asdict(cfg.params),
                **{name: [_json_num(x) for x in col] for name, col in zip(header, table.T)},
            }, fh)
            fh.write("\n")
        else:
            _write_csv(fh, header, table)
    return 0


def _parse_alpha(text: str) -> np.ndarray:
    vals = np.array([complex(s.strip().replace(" ", "")) for s in text.split(",")])
    if vals.shape != (4,):
        raise ValueError("--alpha needs four comma-separated complex amplitudes")
    return vals / np.linalg.norm(vals)


def cmd_gate(cfg: RunConfig) -> int:
    params = cfg.params
    n = cfg.ancilla_n
    if cfg.alpha is not None:
        alpha = _parse_alpha(cfg.alpha)
    else:
        alpha = haar_random_state(np.random.default_rng(cfg.seed))
    t_rev = params.revival_time
    deviation = unitarity_constraint(n, t_rev, params)
    scan = probability_surface(alpha, n, cfg.times(), params)

    report = io.StringIO()
    status = 0
    print(f"ancilla n = {n}; t_rev = 2*pi/J = {fmt(t_rev)} ns", file=report)
    print("alpha (re, im): " + "  ".join(f"({fmt(a.real)}, {fmt(a.imag)})" for a in alpha),
          file=report)
    print(f"constraint deviation at t_rev = {fmt(deviation)}", file=report)
    result = {"n": n, "revival_time": t_rev, "constraint_deviation": deviation,
              "alpha": [[a.real, a.imag] for a in alpha]}
    try:
        gate = extract_gate(n, params)
    except GateExtractionError as exc:
        print(f"FAIL {exc}", file=report)
        gate = None
        status = 1
    if gate is not None:
        theta = gate_angle(params)
        gauge = wrap_phase(gate.phases + (n - 2) * theta)
        print("gate (re, im):", file=report)
        for row in gate.matrix:
            print("  " + "  ".join(f"({fmt(z.real)}, {fmt(z.imag)})" for z in row), file=report)
        print("phases mod 2pi: " + " ".join(fmt(p) for p in gate.phases), file=report)
        print("phases in U^2 gauge: " + " ".join(fmt(p) for p in gauge), file=report)
        ref_dev = float(np.abs(gate.matrix - revival_gate(n, params)).max())
        chain_dev = float(np.abs(gate.matrix - phase_chain_gate(n, params)).max())
        print(f"deviation from exp(-i omega Jz t_rev) = {fmt(ref_dev)}", file=report)
        print(f"deviation from phase chain e^(-i(n-1)theta) U^1 = {fmt(chain_dev)}", file=report)
        result.update(
            gate_re=gate.matrix.real.tolist(), gate_im=gate.matrix.imag.tolist(),
            phases=gate.phases.tolist(), phases_u2_gauge=gauge.tolist(),
            closed_form_deviation=ref_dev, phase_chain_deviation=chain_dev,
        )
    if cfg.check:
        dec = decomposition_check(params)
        print(f"C0 C_U C0 vs U^2: {fmt(dec.cnot_cu_cnot)}", file=report)
        print(f"Rz(b) x Rz(b) vs U^2: {fmt(dec.rz_rz)}", file=report)
        print("PASS" if dec.passed else "FAIL", file=report)
        result["decomposition"] = asdict(dec)
        status |= 0 if dec.passed else 1

    header = ["t_ns", "p_1", "p_2", "p_3", "p_4"]
    table = np.column_stack([scan.times, scan.probabilities])
    if cfg.format == "json":
        result["scan"] = {name: [_json_num(x) for x in col] for name, col in zip(header, table.T)}
        with _sink(cfg.out) as fh:
            json.dump(result, fh)
            fh.write("\n")
        if cfg.out is not None:
            sys.stdout.write(report.getvalue())
    else:
        sys.stdout.write(report.getvalue())
        if cfg.out is not None:
            with _sink(cfg.out) as fh:
                _write_csv(fh, header, table)
    return status


def cmd_selftest(cfg: RunConfig) -> int:
    from .selftest import run_all

    return 0 if run_all() else 1


COMMANDS = {
    "spectrum": cmd_spectrum,
    "bell-trace": cmd_bell_trace,
    "gate": cmd_gate,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega", type=float, default=OMEGA_DEFAULT,
                        help="data-qubit angular frequency [rad/ns]")
    common.add_argument("--omega-tilde", type=float, default=None,
                        help="ancilla angular frequency [rad/ns] (default: --omega)")
    common.add_argument("--coupling", type=float, default=None,
                        help="exchange strength J [rad/ns]; overrides --j-preset")
    common.add_argument("--j-preset", choices=sorted(PRESETS), default="low",
                        help="low = 0.08 rad/ns, high = 0.8 rad/ns")
    common.add_argument("--t-start", type=float, default=0.0)
    common.add_argument("--t-stop", type=float, default=None,
                        help="default: two revival periods 4*pi/J")
    common.add_argument("--samples", type=int, default=2001)
    common.add_argument("--frame", choices=("lab", "rotating"), default="rotating")
    common.add_argument("--scenario", choices=[s.value for s in Scenario], default="phi+")
    common.add_argument("--ancilla-n", type=int, choices=(1, 2, 3, 4), default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--alpha", default=None,
                        help="data amplitudes, e.g. '1,0,0,1j' (normalized automatically)")
    common.add_argument("--check", action="store_true",
                        help="gate: also verify the CNOT / Rz decompositions")
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="fourspin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    coupling = ns.coupling if ns.coupling is not None else PRESETS[ns.j_preset]
    return RunConfig(
        command=ns.command, omega=ns.omega, omega_tilde=ns.omega_tilde, coupling=coupling,
        t_start=ns.t_start, t_stop=ns.t_stop, samples=ns.samples, frame=ns.frame,
        scenario=ns.scenario, ancilla_n=ns.ancilla_n, seed=ns.seed, out=ns.out,
        format=ns.format, alpha=ns.alpha, check=ns.check,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[cfg.command](cfg)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
