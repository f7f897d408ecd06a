"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse/IO, 3 threshold not met,
4 optimizer budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import analytic, control, seqfile, wsearch
from .simcore import StateVector, apply_sequence, fidelity, ghz_state, w_state, zero_state
from .symmetry import SECTORS, parity_sector

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_THRESHOLD, EXIT_BUDGET = 0, 1, 2, 3, 4
MAX_FULL = 14
GHZ_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _print_fidelity(value: float) -> None:
    print(f"fidelity {value:.12f}")


def _check_full(n: int, max_full: int) -> None:
    if n > max_full:
        raise UsageError(
            f"n={n} exceeds the full-space simulation cap ({max_full}); raise --max-full"
        )


def _load_config(args) -> wsearch.OptimizationConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise seqfile.SequenceFileError("config", str(exc)) from exc
        if not isinstance(data, dict):
            raise seqfile.SequenceFileError("config", "expected a JSON object")
    overrides = {
        "seed": args.seed,
        "restarts": args.restarts,
        "threshold": args.threshold,
        "max_evals": args.max_evals,
        "max_params": args.max_params,
        "workers": args.workers,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return wsearch.OptimizationConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_ghz(args) -> int:
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    _check_full(args.n, args.max_full)
    named = analytic.ghz_sequence(args.n)
    seqfile.write_sequence(args.out, named.seq, named.label, named.target)
    value = fidelity(named.prepare(), ghz_state(args.n))
    _print_fidelity(value)
    return EXIT_OK if value >= 1 - GHZ_TOL else EXIT_THRESHOLD


def _w_fidelity(seq, n: int, max_full: int) -> float:
    if n <= max_full:
        return fidelity(apply_sequence(zero_state(n), seq), w_state(n))
    # beyond the cap: evolve in the Dicke basis, where |0...0> and |W> both live
    start = np.zeros(n + 1, dtype=complex)
    start[0] = 1
    out = apply_sequence(StateVector(n, "symmetric", start), seq)
    target = np.zeros(n + 1, dtype=complex)
    target[1] = 1
    return float(abs(np.vdot(target, out.amps)))


def cmd_w(args) -> int:
    n = args.n
    if n < 2:
        raise UsageError(f"--n must be >= 2, got {n}")
    config = _load_config(args)
    if n in (3, 4):
        named = analytic.w3_sequence() if n == 3 else analytic.w4_sequence()
        seq, label = named.seq, named.label
    else:
        result = wsearch.find_min_ansatz(n, config)
        if result is None:
            print(f"no ansatz up to {config.max_params or 3 * n} parameters reached "
                  f"fidelity {config.threshold}", file=sys.stderr)
            return EXIT_BUDGET
        seq = result.ansatz.full_sequence(result.best_params)
        label = f"w{n}-i{result.ansatz.i}-j{result.ansatz.j}"
    seqfile.write_sequence(args.out, seq, label, "W")
    value = _w_fidelity(seq, n, args.max_full)
    _print_fidelity(value)
    return EXIT_OK if value >= config.threshold else EXIT_THRESHOLD


def cmd_simulate(args) -> int:
    seq, _ = seqfile.read_sequence(args.seq)
    _check_full(seq.n, args.max_full)
    if args.target == "ghz":
        target = ghz_state(seq.n)
    elif args.target == "w":
        target = w_state(seq.n)
    else:
        target = seqfile.read_state(args.target)
        if target.n != seq.n or target.basis != "full":
            raise seqfile.SequenceFileError(
                "target", f"needs a full-basis state for n={seq.n}")
    final = apply_sequence(zero_state(seq.n), seq)
    _print_fidelity(fidelity(target, final))
    if args.dump:
        seqfile.write_state(args.dump, final)
    return EXIT_OK


def _check_range(args) -> None:
    if args.n_from < 2 or args.n_to < args.n_from:
        raise UsageError(f"invalid range --from {args.n_from} --to {args.n_to}")


def cmd_scan(args) -> int:
    _check_range(args)
    config = _load_config(args)
    scan = wsearch.min_params_scan(args.n_from, args.n_to, config)
    sidecar = seqfile.write_scan(args.out, scan, config)
    for rec in scan.records:
        count = "-" if rec.min_param_count is None else rec.min_param_count
        print(f"n={rec.n} min_params={count}")
    print(f"fit slope={scan.slope:.6g} intercept={scan.intercept:.6g} r={scan.r:.6g}")
    print(f"wrote {args.out} and {sidecar}")
    return EXIT_OK if scan.all_resolved else EXIT_BUDGET


def cmd_controllability(args) -> int:
    _check_range(args)
    reports = [control.connectivity_report(n, s)
               for n in range(args.n_from, args.n_to + 1) for s in SECTORS
               if parity_sector(n, s).dim > 0]
    payload = [r.to_dict() for r in reports]
    seqfile.atomic_write_text(args.out, json.dumps(payload, indent=2) + "\n")
    failed = [r for r in reports if not (r.controllable and r.commutant_dim == 1)]
    for r in failed:
        print(f"n={r.n} {r.sector}: connected={r.connected} "
              f"nondegenerate={r.nondegenerate} commutant_dim={r.commutant_dim}",
              file=sys.stderr)
    print(f"{len(reports) - len(failed)}/{len(reports)} sectors controllable")
    return EXIT_THRESHOLD if failed else EXIT_OK


def _add_search_flags(p):
    p.add_argument("--config", help="JSON file with OptimizationConfig fields")
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--threshold", type=float)
    p.add_argument("--max-evals", dest="max_evals", type=int)
    p.add_argument("--max-params", dest="max_params", type=int)
    p.add_argument("--workers", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isingctl", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ghz", help="write the analytic GHZ sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-full", dest="max_full", type=int, default=MAX_FULL)
    p.set_defaults(func=cmd_ghz)

    p = sub.add_parser("w", help="write a W-state sequence (analytic or optimized)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-full", dest="max_full", type=int, default=MAX_FULL)
    _add_search_flags(p)
    p.set_defaults(func=cmd_w)

    p = sub.add_parser("simulate", help="apply a sequence file to |0...0>")
    p.add_argument("seq", help="sequence JSON file")
    p.add_argument("--target", default="ghz", help="'ghz', 'w' or a state JSON file")
    p.add_argument("--dump", help="write the final state to this JSON file")
    p.add_argument("--max-full", dest="max_full", type=int, default=MAX_FULL)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan", help="minimum W parameter counts over a range of n")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV path; fit goes to the .json sidecar")
    _add_search_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("controllability", help="connectivity/commutant reports as JSON")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_controllability)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits directly on bad flags and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"isingctl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except seqfile.SequenceFileError as exc:
        print(f"isingctl: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"isingctl: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
