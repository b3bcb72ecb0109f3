"""Command-line front end.

Subcommands::

    iongrover grover  --n 3 --marked 111 --variant feng --s-max 10
    iongrover compare --n 3 --marked 111 --s-max 10 --format csv
    iongrover reduce  --unitary u.json --prepared 00 --marked 11

Bitstrings are read left to right as qubit 0 .. n-1, qubit 0 being the most
significant bit of the basis index. Data goes to stdout (or ``--output``),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import analytic
from .gates import UnitaryFileError, load_unitary, w_layer
from .grover import GroverSpec, Variant, optimal_iterations, run
from .linalg import MAX_QUBITS, from_bitstring

GROVER_COLUMNS = ("s", "p_simulated", "p_analytic", "amplitude_magnitude", "abs_error")
COMPARE_COLUMNS = ("s", "p_corrected", "p_feng", "p_analytic")
DECIMALS = 12


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n_qubits: int
    marked: str
    prepared: str
    variant: str = "corrected"
    s_max: int = 10
    unitary_file: str | None = None
    output_format: str = "csv"
    emit_state: bool = False

    def __post_init__(self):
        for name in ("marked", "prepared"):
            bits = getattr(self, name)
            if len(bits) != self.n_qubits or set(bits) - {"0", "1"}:
                raise UsageError(f"--{name} must be a {self.n_qubits}-bit string of 0/1, got {bits!r}")
        if self.s_max < 0:
            raise UsageError("--s-max must be non-negative")
        if self.variant == "general" and self.unitary_file is None:
            raise UsageError("--variant general needs --unitary FILE")
        if self.emit_state and self.output_format != "json":
            raise UsageError("--emit-state is only available with --format json")


@dataclass(frozen=True)
class SweepRecord:
    s: int
    p_simulated: float
    p_analytic: float
    amplitude_magnitude: float
    abs_error: float


def _fmt(x: float) -> str:
    return f"{x:.{DECIMALS}f}"


def _num(x: float) -> float:
    return round(float(x), DECIMALS)


def _unitary(config: SweepConfig):
    if config.unitary_file is None:
        return None
    u = load_unitary(config.unitary_file)
    if u.dim != 1 << config.n_qubits:
        raise UsageError(f"unitary has dim {u.dim}, register needs {1 << config.n_qubits}")
    return u


def _spec(config: SweepConfig, variant: Variant, u) -> GroverSpec:
    return GroverSpec(
        n_qubits=config.n_qubits,
        tau=from_bitstring(config.marked),
        gamma=from_bitstring(config.prepared),
        variant=variant,
        u=u,
        max_iterations=config.s_max,
    )


def sweep(config: SweepConfig) -> tuple[list[SweepRecord], list]:
    """Simulated and closed-form curves for one variant, plus raw traces."""
    spec = _spec(config, Variant(config.variant), _unitary(config))
    theta = analytic.overlap_theta(spec.u, spec.gamma, spec.tau)
    curve = analytic.predict(theta, config.s_max)
    traces = run(spec, emit_state=config.emit_state)
    records = [
        SweepRecord(
            s=t.s,
            p_simulated=t.success_probability,
            p_analytic=p,
            amplitude_magnitude=t.marked_amplitude_magnitude,
            abs_error=abs(t.success_probability - p),
        )
        for t, (_, p) in zip(traces, curve.points)
    ]
    return records, traces


def compare(config: SweepConfig) -> list[dict]:
    u = _unitary(config)
    corrected = run(_spec(config, Variant.CORRECTED, u))
    feng = run(_spec(config, Variant.FENG_ORIGINAL, u))
    spec = _spec(config, Variant.CORRECTED, u)
    theta = analytic.overlap_theta(spec.u, spec.gamma, spec.tau)
    curve = analytic.predict(theta, config.s_max)
    return [
        {"s": c.s, "p_corrected": c.success_probability, "p_feng": f.success_probability, "p_analytic": p}
        for c, f, (_, p) in zip(corrected, feng, curve.points)
    ]


def _argmax(rows, key):
    # first occurrence wins, so the reported s is deterministic
    best = max(range(len(rows)), key=lambda i: (rows[i][key], -i))
    return rows[best]["s"], rows[best][key]


def render_grover(records, traces, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(GROVER_COLUMNS)
        for r in records:
            w.writerow([r.s] + [_fmt(getattr(r, c)) for c in GROVER_COLUMNS[1:]])
        return buf.getvalue()
    rows = []
    for r, t in zip(records, traces):
        row = {"s": r.s, **{c: _num(getattr(r, c)) for c in GROVER_COLUMNS[1:]}}
        if t.full_state is not None:
            row["state"] = [[_num(z.real), _num(z.imag)] for z in t.full_state.amps]
        rows.append(row)
    return json.dumps({"columns": list(GROVER_COLUMNS), "records": rows}, indent=2) + "\n"


def render_compare(rows, fmt: str) -> str:
    s_c, p_c = _argmax(rows, "p_corrected")
    s_f, p_f = _argmax(rows, "p_feng")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COMPARE_COLUMNS)
        for r in rows:
            w.writerow([r["s"]] + [_fmt(r[c]) for c in COMPARE_COLUMNS[1:]])
        buf.write(
            f"# max p_corrected={_fmt(p_c)} at s={s_c}; max p_feng={_fmt(p_f)} at s={s_f}\n"
        )
        return buf.getvalue()
    doc = {
        "columns": list(COMPARE_COLUMNS),
        "records": [{"s": r["s"], **{c: _num(r[c]) for c in COMPARE_COLUMNS[1:]}} for r in rows],
        "summary": {
            "max_p_corrected": _num(p_c),
            "argmax_corrected": s_c,
            "max_p_feng": _num(p_f),
            "argmax_feng": s_f,
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def reduce_report(u, gamma_bits: str, tau_bits: str) -> dict:
    r = analytic.reduce(u, from_bitstring(gamma_bits), from_bitstring(tau_bits))
    return {
        "u_tau_gamma": {"re": r.u_tau_gamma.real, "im": r.u_tau_gamma.imag},
        "theta": r.theta,
        "axis": {"nx": r.axis.nx, "ny": r.axis.ny},
        "q_prime": [[[z.real, z.imag] for z in row] for row in r.q_prime.matrix],
        "optimal_iterations": optimal_iterations(r.theta),
    }


# -- argument handling ------------------------------------------------------


def _register_args(p: argparse.ArgumentParser, with_variant: bool) -> None:
    p.add_argument("--n", type=int, help="number of qubits (default: length of --marked)")
    p.add_argument("--marked", required=True, help="marked basis state, e.g. 111 (qubit 0 first)")
    p.add_argument("--prepared", help="prepared basis state (default: all zeros)")
    if with_variant:
        p.add_argument("--variant", choices=[v.value for v in Variant], default="corrected")
        p.add_argument("--emit-state", action="store_true", help="include full state vectors (json only)")
    p.add_argument("--s-max", type=int, default=10)
    p.add_argument("--unitary", help="JSON unitary file used in place of W_n")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", help="write data here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iongrover",
        description="Grover search with X rotations and controlled-Y: simulation vs closed form. "
        "Bitstrings are read left to right as qubit 0..n-1 (qubit 0 = most significant bit).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _register_args(sub.add_parser("grover", help="per-step success probabilities for one variant"), True)
    _register_args(sub.add_parser("compare", help="corrected vs original diffusion, side by side"), False)
    red = sub.add_parser("reduce", help="SU(2) reduction of the Grover step")
    red.add_argument("--unitary", help="JSON unitary file (default: W_n)")
    red.add_argument("--n", type=int, help="number of qubits (default: length of --marked)")
    red.add_argument("--prepared", help="prepared basis state (default: all zeros)")
    red.add_argument("--marked", required=True)
    red.add_argument("--output")
    return parser


def _n_and_bits(args) -> tuple[int, str, str]:
    n = args.n if args.n is not None else len(args.marked)
    if not 1 <= n <= MAX_QUBITS:
        raise UsageError(f"--n must lie in [1, {MAX_QUBITS}]")
    prepared = args.prepared if args.prepared is not None else "0" * n
    for name, bits in (("marked", args.marked), ("prepared", prepared)):
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise UsageError(f"--{name} must be a {n}-bit string of 0/1, got {bits!r}")
    return n, args.marked, prepared


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        n, marked, prepared = _n_and_bits(args)
        if args.command == "reduce":
            u = load_unitary(args.unitary) if args.unitary else w_layer(n)
            if u.dim != 1 << n:
                raise UsageError(f"unitary has dim {u.dim}, register needs {1 << n}")
            try:
                report = reduce_report(u, prepared, marked)
            except (analytic.DegenerateOverlap, analytic.SaturatedOverlap) as exc:
                err = {"error": type(exc).__name__, "message": str(exc)}
                sys.stderr.write(json.dumps(err) + "\n")
                return 3
            _emit(json.dumps(report, indent=2) + "\n", args.output)
            return 0
        config = SweepConfig(
            n_qubits=n,
            marked=marked,
            prepared=prepared,
            variant=getattr(args, "variant", "corrected"),
            s_max=args.s_max,
            unitary_file=args.unitary,
            output_format=args.format,
            emit_state=getattr(args, "emit_state", False),
        )
        if args.command == "grover":
            records, traces = sweep(config)
            _emit(render_grover(records, traces, config.output_format), args.output)
        else:
            _emit(render_compare(compare(config), config.output_format), args.output)
        return 0
    except (UsageError, UnitaryFileError, ValueError, OSError) as exc:
        sys.stderr.write(f"iongrover: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
