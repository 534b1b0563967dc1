"""Command-line front end.

    wildprim enumerate --p 2 --f 1 --char 0 --n 2 [--format json|csv] [--out F]
    wildprim reps --p 2 --f 1 --char 0 --n 2
    wildprim verify --suite quick|full [--out F]

Exit codes: 0 success, 1 verification failure or usage error, 2 invariant
violation, 3 precision exhaustion.
"""

from __future__ import annotations

import argparse
import sys

from .enumerator import (DEFAULT_CACHE_DIR, enumerate_primitive,
                         list_representations)
from .errors import InvariantViolation, PrecisionExhausted
from .tower import BaseField


def _base_from_args(args) -> BaseField:
    char = 0 if args.char == "0" else args.p
    return BaseField(args.p, args.f, char)


def _add_base_flags(sub):
    sub.add_argument("--p", type=int, required=True, help="residue characteristic")
    sub.add_argument("--f", type=int, required=True, help="base residue degree")
    sub.add_argument("--char", choices=["0", "p"], required=True,
                     help="base field characteristic")
    sub.add_argument("--n", type=int, required=True, help="degree parameter (p^n)")
    sub.add_argument("--seed", type=int, default=0, help="chop randomization seed")
    sub.add_argument("--cache-dir", default=None,
                     help=f"simple-class cache directory (default {DEFAULT_CACHE_DIR}, "
                          "env WILDPRIM_CACHE_DIR)")
    sub.add_argument("--no-cache", action="store_true", help="bypass the cache")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wildprim", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    enum = subs.add_parser("enumerate",
                           help="enumerate primitive degree-p^n extensions")
    _add_base_flags(enum)
    enum.add_argument("--level-bound", type=int, default=None,
                      help="pole-order bound (required in char p)")
    enum.add_argument("--precision", type=int, default=None,
                      help="working uniformizer-adic precision")
    enum.add_argument("--format", choices=["json", "csv"], default="json")
    enum.add_argument("--out", default=None, help="output path (default stdout)")
    enum.add_argument("--single-thread", action="store_true",
                      help="serial reference execution (identical output)")
    enum.add_argument("--workers", type=int, default=4,
                      help="worker threads for per-class enumeration")

    reps = subs.add_parser("reps", help="list simple representation classes")
    _add_base_flags(reps)

    ver = subs.add_parser("verify", help="run the verification suite")
    ver.add_argument("--suite", choices=["quick", "full"], default="quick")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--out", default=None, help="write a JSON report here")
    return parser


def cmd_enumerate(args) -> int:
    from . import serialize
    base = _base_from_args(args)
    workers = 1 if args.single_thread else max(1, args.workers)
    result = enumerate_primitive(
        base, args.n, level_bound=args.level_bound, precision=args.precision,
        seed=args.seed, cache_dir=args.cache_dir, use_cache=not args.no_cache,
        workers=workers)
    if args.format == "json":
        payload = serialize.to_json_bytes(result)
    else:
        payload = serialize.to_csv_text(result).encode()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    return 0


def cmd_reps(args) -> int:
    base = _base_from_args(args)
    classes = list_representations(base, args.n, seed=args.seed,
                                   cache_dir=args.cache_dir,
                                   use_cache=not args.no_cache)
    print(f"# simple classes of dimension {args.n}: {len(classes)}")
    print("identifier  dim  end_degree  inertia_exponent  mult_in_regular")
    for c in classes:
        print(f"{c.identifier:<10}  {c.dim:<3}  {c.end_degree:<10}  "
              f"{c.inertia_exponent:<16}  {c.multiplicity_in_regular}")
    return 0


# towers exercised by the verification suites: (base, n, level bound)
QUICK_TOWERS = [(BaseField(2, 1, 0), 1, None), (BaseField(2, 1, 0), 2, None),
                (BaseField(2, 1, 2), 1, 5)]
FULL_TOWERS = QUICK_TOWERS + [
    (BaseField(2, 1, 0), 3, None), (BaseField(2, 2, 0), 2, None),
    (BaseField(3, 1, 0), 1, None), (BaseField(3, 1, 0), 2, None),
    (BaseField(2, 1, 2), 2, 5), (BaseField(3, 1, 3), 1, 4),
    (BaseField(2, 2, 2), 1, 3)]


def _verify_suite(suite: str, seed: int):
    from .verify import (VerificationReport, cross_checks, mass_check,
                         quadratic_catalog_check, structure_checks)
    report = VerificationReport()
    report.extend(quadratic_catalog_check(seed))
    report.add("mass[Q_2]", mass_check(BaseField(2, 1, 0), seed=seed), 2)
    towers = QUICK_TOWERS
    if suite == "full":
        report.add("mass[Q_4]", mass_check(BaseField(2, 2, 0), seed=seed), 2)
        report.add("mass[Q_3]", mass_check(BaseField(3, 1, 0), seed=seed), 3)
        towers = FULL_TOWERS
        res = enumerate_primitive(BaseField(2, 1, 0), 3, seed=seed)
        report.add("count[Q_2,n=3]", len(res.records), 16)
        res4 = enumerate_primitive(BaseField(2, 2, 0), 2, seed=seed)
        report.add("no-S4[Q_4,n=2]",
                   sorted(set(r.closure_order for r in res4.records)), [12])
    for base, n, bound in towers:
        result = enumerate_primitive(base, n, level_bound=bound, seed=seed)
        report.extend(structure_checks(result))
        heavy = result.basis.dim > 30
        report.extend(cross_checks(result, precision=not heavy or suite == "full"))
    return report


def cmd_verify(args) -> int:
    import json
    report = _verify_suite(args.suite, args.seed)
    print(report.render())
    summary = "all checks passed" if report.passed else "FAILURES present"
    print(f"# {summary} ({len(report.checks)} checks)")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args)
        if args.command == "reps":
            return cmd_reps(args)
        if args.command == "verify":
            return cmd_verify(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
