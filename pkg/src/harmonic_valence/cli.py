"""Command-line entry point: ``harmval {oracle,expect,search,count,verify}``.

Exit codes: 0 success / target achieved / certificate valid, 1 domain failure
(target not achieved, certificate rejected), 2 usage, parameter or schema error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .certify import DEFAULT_PRECISION_CAP
from .dyadic import Dyadic, DyadicParseError
from .ensembles import ek_expected_count
from .errors import CertificateSchemaError, DegeneratePolynomialError, ParameterError
from .experiments import compare_to_bounds, provenance_line, run_expectation_experiment, stats_to_csv
from .search import DEFAULT_SIGMA_SCALE, hunt_witness, verify_certificate
from .serialization import certificate_to_dict, dumps, instance_from_dict, load_json
from .valence import DEFAULT_SCHEDULE, certified_valence

SEED_ENV = "HARMVAL_SEED"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _dyadic_arg(text: str) -> Dyadic:
    try:
        return Dyadic.parse(text)
    except DyadicParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _extended_float(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _provenance(command: str, config: dict) -> dict:
    return {"tool": "harmonic_valence", "version": __version__, "command": command, "config": config}


def cmd_oracle(args) -> int:
    value = ek_expected_count(args.m, args.a, args.b)
    print(repr(value))
    return EXIT_OK


def cmd_expect(args) -> int:
    config = {
        "n": args.n, "m": args.m, "epsilon": str(args.eps), "trials": args.trials, "seed": args.seed,
        "precision_bits": args.precision,
    }
    stats = run_expectation_experiment(
        args.n, args.m, args.eps, args.trials, args.seed, threads=args.threads, max_precision_bits=args.precision
    )
    _write(stats_to_csv([stats], [provenance_line(config)]), args.output)
    report = compare_to_bounds(stats)
    if args.bounds_json:
        payload = {"provenance": _provenance("expect", config), "bounds": report.to_dict()}
        Path(args.bounds_json).write_text(dumps(payload), encoding="utf-8")
    out = sys.stderr if args.output in (None, "-") else sys.stdout
    out.write(report.to_text())
    return EXIT_OK


def cmd_search(args) -> int:
    schedule = args.schedule or list(DEFAULT_SCHEDULE)
    config = {
        "n": args.n, "m": args.m, "budget": args.budget, "seed": args.seed, "refine_steps": args.refine_steps,
        "sigma_scale": args.sigma_scale,
        "schedule": [str(e) for e in schedule], "precision_bits": args.precision,
    }
    report = hunt_witness(
        args.n, args.m, args.budget, args.seed, schedule, args.refine_steps, args.precision, args.threads,
        args.sigma_scale,
    )
    cert = report.best_certificate
    payload = {
        "provenance": _provenance("search", config),
        "target": report.target,
        "achieved": report.achieved,
        "best_total": report.best_total,
        "best_epsilon": str(cert.instance.epsilon),
        "trials_used": report.trials_used,
        "improvement_steps": report.improvement_steps,
        "stretch_target_nm": report.stretch_target,
        "stretch_reached": report.stretch_reached,
        "certificate": certificate_to_dict(cert),
    }
    _write(dumps(payload), args.output)
    status = "achieved" if report.achieved else "not achieved"
    print(f"n={args.n} m={args.m} target={report.target} best={report.best_total} {status}", file=sys.stderr)
    return EXIT_OK if report.achieved else EXIT_FAIL


def cmd_count(args) -> int:
    data = load_json(args.instance)
    if not isinstance(data, dict):
        raise CertificateSchemaError("instance must be a JSON object")
    inst = instance_from_dict(data.get("certificate", data))
    cert = certified_valence(inst, args.precision, data.get("seed"))
    _write(dumps(certificate_to_dict(cert)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    data = load_json(args.path)
    if not isinstance(data, dict):
        raise CertificateSchemaError("certificate must be a JSON object")
    ok = verify_certificate(data)
    print("valid" if ok else "INVALID")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmval", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=_default_seed(), help=f"RNG seed (default ${SEED_ENV} or 0)")
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION_CAP, help="trig precision cap in bits")
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p = sub.add_parser("oracle", help="expected real zeros of a real Kostlan polynomial in (a, b)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=_extended_float, default=-math.inf)
    p.add_argument("--b", type=_extended_float, default=math.inf)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("expect", help="Monte Carlo zero counts, CSV + bounds table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", type=_dyadic_arg, default=Dyadic(1, -40), help="epsilon, e.g. 2^-40 or 3*2^-12")
    p.add_argument("--trials", type=int, default=5000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bounds-json", default=None, help="also write the bounds report as JSON")
    common(p)
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("search", help="hunt for a certified witness with >= ceil(n sqrt m) zeros")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=500)
    p.add_argument("--refine-steps", type=int, default=0)
    p.add_argument("--sigma-scale", type=float, default=DEFAULT_SIGMA_SCALE,
                   help="initial refinement step as a fraction of each coefficient's standard deviation")
    p.add_argument("--schedule", type=_dyadic_arg, nargs="+", default=None, help="epsilon schedule")
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("count", help="certify the zero count of an instance file")
    p.add_argument("instance")
    common(p, seed=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="re-verify a certificate or search report")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertificateSchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, DegeneratePolynomialError, DyadicParseError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
