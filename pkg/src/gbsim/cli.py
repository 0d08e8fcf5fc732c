"""Command-line front end.

Exit codes: 0 success, 1 bad arguments or domain errors, 2 I/O or format
errors. Stochastic subcommands require ``--seed``; output is byte-identical
for identical flags.

Distances reported anywhere in the package are ``sum |p - q|`` without the
usual factor 1/2, i.e. twice the standard total variation distance.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .bosonsampling import DEFAULT_CAP, BosonSamplingInstance, full_distribution
from .errors import HeraldTimeoutError
from .fock import parse_pattern
from .gaussian import chi_max, fig3_rows, herald_stats_row
from .linalg import haar_unitary, load_matrix, matrix_to_json
from .permanent import permanent_ryser
from .pipeline import ExperimentConfig, adaptive_events, gbs_events, rate_breakdown
from .rng import RngStream


class UsageError(Exception):
    pass


class FormatError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _num(x: float) -> str:
    return format(x, ".17g")


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc


def _read_matrix(path: str):
    try:
        return load_matrix(path)
    except (OSError, ValueError) as exc:
        raise FormatError(f"cannot read matrix from {path}: {exc}") from exc


def _pattern(text: str):
    try:
        return parse_pattern(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _threads(args) -> int:
    return args.threads or os.cpu_count() or 1


def cmd_haar(args) -> None:
    if args.dim < 1:
        raise UsageError("--dim must be >= 1")
    _write(args.out, matrix_to_json(haar_unitary(args.dim, RngStream(args.seed, args.stream))))


def cmd_permanent(args) -> None:
    value = permanent_ryser(_read_matrix(args.matrix), workers=_threads(args))
    _write(args.out, f"{_num(value.real)} {_num(value.imag)}\n")


def cmd_distribution(args) -> None:
    u = _read_matrix(args.matrix)
    inst = BosonSamplingInstance(u, _pattern(args.input))
    _write(args.out, full_distribution(inst, cap=args.cap, workers=_threads(args)).to_csv())


def _config(args, n: int, m: int) -> ExperimentConfig:
    return ExperimentConfig(
        n=n, m=m, chi=args.chi, seed=args.seed,
        max_attempts=args.max_attempts,
    )


def _ndjson(events) -> str:
    return "".join(json.dumps(e.to_json()) + "\n" for e in events)


def cmd_sample(args) -> None:
    u = _read_matrix(args.matrix)
    config = _config(args, args.n, u.shape[0])
    events = gbs_events(config, u, args.count, config.rng(args.stream), cap=args.cap)
    _write(args.out, _ndjson(events))


def cmd_adaptive(args) -> None:
    u = _read_matrix(args.matrix)
    target = _pattern(args.target)
    config = _config(args, sum(target), u.shape[0])
    events = adaptive_events(config, u, target, args.count, config.rng(args.stream), cap=args.cap)
    _write(args.out, _ndjson(events))


def _ns(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    return list(range(1, args.n_max + 1))


def cmd_herald_stats(args) -> None:
    cols = ["n", "chi", "p_specific", "p_any", "chi_max", "asymptotic"]
    lines = [",".join(cols)]
    for n in _ns(args):
        row = herald_stats_row(n, args.chi)
        cells = [str(n)] + ["" if math.isnan(row[c]) else _num(row[c]) for c in cols[1:]]
        lines.append(",".join(cells))
    _write(args.out, "\n".join(lines) + "\n")


def _chi_list(text: str) -> list[float]:
    try:
        chis = [float(c) for c in text.split(",") if c.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --chi list {text!r}") from exc
    if not chis or any(not 0.0 < c < 1.0 for c in chis):
        raise UsageError("every chi must lie in (0, 1)")
    return chis


def cmd_fig3(args) -> None:
    lines = ["chi,n,probability,asymptotic"]
    for chi, n, p, a in fig3_rows(_chi_list(args.chi), args.n_max):
        lines.append(f"{_num(chi)},{n},{_num(p)},{_num(a)}")
    _write(args.out, "\n".join(lines) + "\n")


def cmd_rate(args) -> None:
    config = ExperimentConfig(
        n=args.n, m=args.m, chi=args.chi, eta1=args.eta1, eta2=args.eta2, rep_rate=args.rep_rate
    )
    lines = ["quantity,value"] + [f"{k},{_num(v)}" for k, v in rate_breakdown(config).items()]
    _write(args.out, "\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gbsim", description="Boson Sampling from number and Gaussian states.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=False, matrix=True):
        if matrix:
            sp.add_argument("--matrix", required=True, help="network unitary, matrix JSON")
        if seed:
            sp.add_argument("--seed", type=int, required=True)
            sp.add_argument("--stream", type=int, default=0, help="RNG stream id")
        sp.add_argument("--out", default="-", help="output path (default: stdout)")
        sp.add_argument("--threads", type=int, default=0, help="worker threads (default: all cores)")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")

    sp = sub.add_parser("haar", help="write a Haar-random unitary as matrix JSON")
    sp.add_argument("--dim", type=int, required=True)
    common(sp, seed=True, matrix=False)
    sp.set_defaults(func=cmd_haar)

    sp = sub.add_parser("permanent", help="print the permanent as 're im'")
    common(sp)
    sp.set_defaults(func=cmd_permanent)

    sp = sub.add_parser("distribution", help="exact output distribution as CSV")
    sp.add_argument("--input", required=True, help='input pattern, e.g. "1 1 0 0"')
    common(sp)
    sp.set_defaults(func=cmd_distribution)

    for name, func, help_ in (
        ("sample", cmd_sample, "joint (herald, output) events from the Gaussian sampler"),
        ("adaptive", cmd_adaptive, "events from the feed-forward sampler"),
    ):
        sp = sub.add_parser(name, help=help_)
        if name == "sample":
            sp.add_argument("--n", type=int, required=True, help="heralded photon number")
        else:
            sp.add_argument("--target", required=True, help='target input string, e.g. "1 0 1 0"')
        sp.add_argument("--chi", type=float, default=None, help="squeezing (default: chi_max(n))")
        sp.add_argument("--count", type=int, default=1)
        sp.add_argument("--max-attempts", type=int, default=10**7)
        common(sp, seed=True)
        sp.set_defaults(func=func)

    sp = sub.add_parser("herald-stats", help="closed-form herald statistics as CSV")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--n-max", type=int, default=12)
    sp.add_argument("--chi", type=float, default=None, help="squeezing (default: chi_max(n) per row)")
    common(sp, matrix=False)
    sp.set_defaults(func=cmd_herald_stats)

    sp = sub.add_parser("fig3", help="herald probability curves chi,n,probability,asymptotic")
    sp.add_argument("--chi", default="0.2,0.3,0.4,0.5", help="comma-separated squeezing values")
    sp.add_argument("--n-max", type=int, default=50)
    common(sp, matrix=False)
    sp.set_defaults(func=cmd_fig3)

    sp = sub.add_parser("rate", help="sample-rate breakdown as CSV")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=None, help="modes (default: n^2)")
    sp.add_argument("--chi", type=float, default=None)
    sp.add_argument("--eta1", type=float, default=1.0, help="herald-arm transmission")
    sp.add_argument("--eta2", type=float, default=1.0, help="network-arm transmission")
    sp.add_argument("--rep-rate", type=float, default=1e6, help="shots per second")
    common(sp, matrix=False)
    sp.set_defaults(func=cmd_rate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except FormatError as exc:
        print(f"gbsim: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, HeraldTimeoutError) as exc:
        print(f"gbsim {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
