"""Command-line front end: ``solve``, ``compile`` and ``amplify``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import amplifier
from .amplifier import LogisticParams, amplify, step_bounds
from .cnf import ClauseSet, CNFError, load_dimacs
from .compiler import GateError, circuit_to_text, gate_census, synthesize
from .complexity import report as complexity_report
from .simulator import (
    DEFAULT_MAX_QUBITS,
    HARD_MAX_QUBITS,
    WidthError,
    basis_state,
    run,
    success_probability,
    truth_table_run,
)

EXIT_SAT, EXIT_UNSAT, EXIT_ERROR = 0, 1, 2


def choose_engine(width: int, engine: str | None, max_qubits: int) -> str:
    if engine is None:
        return "table" if width > max_qubits else "dense"
    return engine


def solve_instance(
    cs: ClauseSet,
    engine: str | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
    a: float = amplifier.DEFAULT_A,
    max_steps: int | None = None,
    dump_state=None,
) -> tuple[dict[str, Any], amplifier.AmplificationTrace]:
    """Run the full pipeline and return the JSON-ready report plus the orbit."""
    circuit = synthesize(cs)
    layout = circuit.layout
    engine = choose_engine(layout.width, engine, max_qubits)

    if engine == "dense":
        state = run(circuit, basis_state(layout.width, max_qubits=max_qubits))
        if dump_state is not None:
            state.dump_csv(dump_state, threshold=1e-12)
        q2 = success_probability(state, layout).q_squared
        r = round(q2 * (1 << cs.n))
        q2_exact = None
    elif engine == "table":
        r, frac = truth_table_run(cs, circuit)
        q2 = float(frac)
        q2_exact = f"{r}/{1 << cs.n}"
    else:
        raise ValueError(f"unknown engine {engine!r}")

    if max_steps is None:
        max_steps = amplifier.default_max_steps(cs.n)
    trace = amplify(q2, LogisticParams(a=a, max_steps=max_steps))
    lower, upper = step_bounds(cs.n, r) if r > 0 else (None, amplifier.t_c(cs.n))
    comp = complexity_report(cs, gate_census(circuit))

    doc = {
        "instance": {"n": cs.n, "m": cs.m, "cards": cs.cards},
        "layout": {
            "s": list(layout.s),
            "s_f": layout.s_f,
            "mu": layout.mu,
            "N": layout.width,
            "clause_out": list(layout.clause_out),
        },
        "engine": engine,
        "r": r,
        "q2": q2,
        "q2_exact": q2_exact,
        "sat": r > 0,
        "amplifier": {
            "a": a,
            "max_steps": max_steps,
            "m_star": trace.m_star,
            "trace_length": len(trace.orbit),
            "x_final": trace.orbit[-1],
            "bounds": {"lower": lower, "upper": upper},
        },
        "complexity": comp.to_dict(),
    }
    return doc, trace


def _parse_q2(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"q2 must lie in [0, 1], got {text}")
    return value


def _implied_n(q2: Fraction) -> int:
    # exact for dyadic q2 = r / 2^n; a safe step budget otherwise
    return max(1, q2.denominator.bit_length() - 1)


def _cmd_solve(args: argparse.Namespace) -> int:
    cs = load_dimacs(args.file)
    dump = open(args.dump_state, "w", encoding="utf-8", newline="") if args.dump_state else None
    try:
        doc, trace = solve_instance(
            cs,
            engine=args.engine,
            max_qubits=args.max_qubits,
            a=args.a,
            max_steps=args.max_steps,
            dump_state=dump,
        )
    finally:
        if dump is not None:
            dump.close()
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            trace.write_csv(fh)
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_SAT if doc["sat"] else EXIT_UNSAT


def _cmd_compile(args: argparse.Namespace) -> int:
    circuit = synthesize(load_dimacs(args.file))
    if args.logic_only:
        circuit = circuit.logic_only()
    text = circuit_to_text(circuit)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _write_sweep(n: int, a: float, max_steps: int, fh) -> None:
    steps, x_at = amplifier.crossing_grid(n, a, max_steps)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["r", "q2", "m_star", "x_m_star", "lower", "upper"])
    for r, (m, x) in enumerate(zip(steps.tolist(), x_at.tolist()), start=1):
        lower, upper = step_bounds(n, r, a)
        row = [r, f"{r / (1 << n):.17g}", "", "", lower, upper]
        if m >= 0:
            row[2:4] = [m, f"{x:.17g}"]
        writer.writerow(row)


def _cmd_amplify(args: argparse.Namespace) -> int:
    if args.q2 is not None:
        q2 = args.q2
        n = args.n if args.n is not None else _implied_n(q2)
    elif args.n is not None and (args.r is not None or args.sweep):
        n = args.n
        if args.r is not None and not 0 <= args.r <= (1 << n):
            raise ValueError(f"r must lie in 0..2^n, got {args.r}")
        q2 = Fraction(args.r or 0, 1 << n)
    else:
        raise ValueError("amplify needs --q2, or --n with --r or --sweep")
    max_steps = args.max_steps if args.max_steps is not None else amplifier.default_max_steps(n)

    out = open(args.trace, "w", encoding="utf-8", newline="") if args.trace else sys.stdout
    try:
        if args.sweep:
            _write_sweep(n, args.a, max_steps, out)
        else:
            amplify(float(q2), LogisticParams(a=args.a, max_steps=max_steps)).write_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omvsat",
        description="Compile CNF to the OR/AND gate circuit, simulate it and "
        "amplify the success probability with the logistic map.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--a", type=float, default=amplifier.DEFAULT_A, help="logistic parameter")
        p.add_argument("--max-steps", type=int, default=None)
        p.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS,
                       help=f"dense engine width cap (hard limit {HARD_MAX_QUBITS})")
        p.add_argument("--trace", type=Path, default=None, help="write amplifier CSV here")

    p = sub.add_parser("solve", help="full pipeline, JSON report on stdout")
    p.add_argument("file", type=Path)
    p.add_argument("--engine", choices=("dense", "table"), default=None)
    p.add_argument("--dump-state", type=Path, default=None,
                   help="debug: write final dense amplitudes as index,real,imag CSV")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("compile", help="emit the gate list")
    p.add_argument("file", type=Path)
    p.add_argument("--logic-only", action="store_true", help="drop the Hadamard prefix")
    p.add_argument("-o", "--output", type=Path, default=None)
    common(p)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("amplify", help="logistic-map trace as step,x CSV")
    p.add_argument("--q2", type=_parse_q2, default=None, help="initial value, e.g. 1/4096")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--sweep", action="store_true",
                   help="per-r crossing table for r = 1..2^(n-1)")
    common(p)
    p.set_defaults(func=_cmd_amplify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    if args.max_qubits > HARD_MAX_QUBITS:
        print(f"error: --max-qubits cannot exceed {HARD_MAX_QUBITS}", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (CNFError, GateError, WidthError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
