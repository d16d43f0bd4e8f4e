"""Write the probability/fidelity traces and gate scans behind the figures as CSV.

Usage: python3 scripts/reproduce_figures.py [outdir]   (default: results/)

Produces one bell-trace file per scenario, coupling preset and frame, the
probability surfaces for ancilla states n = 1, 2 at J = 0.08 rad/ns, and a
spectrum table per preset. Everything goes through the ``fourspin`` CLI so the
files are identical to what the command line would write.
"""

import sys
from contextlib import redirect_stdout
from io import StringIO
from pathlib import Path

from fourspin.cli import main
from fourspin.stabilizer import Scenario


def run(*argv):
    buf = StringIO()
    with redirect_stdout(buf):
        status = main([str(a) for a in argv])
    if status:
        raise SystemExit(f"fourspin {' '.join(map(str, argv))} exited with {status}")
    return buf.getvalue()


def main_script(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for preset in ("low", "high"):
        run("spectrum", "--j-preset", preset, "--out", outdir / f"spectrum_{preset}.csv")
        for sc in Scenario:
            tag = sc.value.replace("+", "plus").replace("-", "minus")
            for frame in ("lab", "rotating"):
                run("bell-trace", "--j-preset", preset, "--scenario", sc.value, "--frame", frame,
                    "--out", outdir / f"trace_{tag}_{preset}_{frame}.csv")
    for n in (1, 2):
        report = run("gate", "--j-preset", "low", "--ancilla-n", n, "--seed", 2024, "--check",
                     "--out", outdir / f"gate_scan_n{n}.csv")
        (outdir / f"gate_n{n}.txt").write_text(report)
    print(f"wrote {len(list(outdir.iterdir()))} files to {outdir}")


if __name__ == "__main__":
    main_script(Path(sys.argv[1] if len(sys.argv) > 1 else "results"))
