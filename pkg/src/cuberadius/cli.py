"""Command-line front end.

Subcommands: radius, bn, threshold-scan, majority-scan, spectrum, verify,
gamma, tn.  Scalar results are emitted as JSON, scans as CSV (17 significant
digits), all byte-deterministic for a fixed (command, seed, workers); numeric
content is independent of the worker count.  Exit codes: 0 success,
1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import families, inequalities, radius, serialize, threshold
from .cube import sup_norm, walsh_transform

WORKERS_ENV = "CUBERADIUS_WORKERS"


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_family(args):
    name = args.family
    if name is None:
        raise ValueError("need --family (or --input where supported)")
    if args.n is None:
        raise ValueError("--n is required with --family")
    if name == "extremal":
        return families.extremal_indicator_flip(args.n)
    if name == "dictator":
        return families.dictator(args.n, 1)
    if name == "parity":
        m = args.m if args.m is not None else args.n
        return families.parity(args.n, range(1, m + 1))
    if name == "threshold":
        if args.alpha is None:
            raise ValueError("threshold needs --alpha")
        return families.threshold(families.ThresholdSpec(args.n, args.alpha))
    if name == "majority":
        return families.majority(args.n)
    if name == "biased":
        if args.lam is None:
            raise ValueError("biased needs --lambda")
        return families.biased_indicator(args.n, args.lam)
    raise ValueError(f"unknown family {name!r}")


def _load_input_function(path: str):
    with open(path) as fh:
        return serialize.loads_truth_table(fh.read())


def cmd_radius(args) -> int:
    if args.input:
        f = _load_input_function(args.input)
    elif args.family:
        f = _build_family(args)
    else:
        raise ValueError("radius needs --family or --input")
    result = radius.boolean_radius(radius.level_profile(walsh_transform(f), sup_norm(f)))
    if args.format == "csv":
        rr = serialize.radius_result_obj(result)
        text = "radius,residual,iterations,method\n%s,%s,%d,%s\n" % (
            rr["radius"] if isinstance(rr["radius"], str) else serialize.fmt17(rr["radius"]),
            serialize.fmt17(rr["residual"]),
            rr["iterations"],
            rr["method"],
        )
    else:
        text = serialize.dumps_radius_result(result)
    _write(args, text)
    return 0


def cmd_bn(args) -> int:
    obj = {"n": args.n, "formula": radius.bn_radius_formula(args.n)}
    code = 0
    if args.brute:
        brute, _ = radius.brute_force_bn_radius(args.n, workers=args.workers)
        obj["brute_force"] = brute
        obj["match"] = bool(abs(brute - obj["formula"]) <= 1e-10)
        if not obj["match"]:
            code = 1
    _write(args, serialize.dumps(obj))
    return code


def _alpha_tokens(spec: str, N: int):
    for tok in spec.split(","):
        tok = tok.strip()
        if tok == "sqrt":
            yield math.isqrt(N)
        elif tok == "half":
            yield N // 2
        elif tok:
            yield int(tok)


def cmd_threshold_scan(args) -> int:
    Ns = [int(t) for t in args.n_list.split(",") if t.strip()]
    reports, seen = [], set()
    for N in Ns:
        for a in _alpha_tokens(args.alphas, N):
            if not 0 <= a < N:
                raise ValueError(f"alpha = {a} out of range for N = {N}")
            rep = threshold.threshold_radius(N, a)
            if (rep.n, rep.alpha) not in seen:
                seen.add((rep.n, rep.alpha))
                reports.append(rep)
    _write(args, serialize.threshold_scan_csv(reports))
    return 0


def cmd_majority_scan(args) -> int:
    if args.n_start % 2 == 0 or args.n_stop % 2 == 0:
        raise ValueError("majority scan bounds must be odd")
    rows = threshold.majority_scan(range(args.n_start, args.n_stop + 1, 2), workers=args.workers)
    _write(args, serialize.majority_scan_csv(rows, threshold.gamma_constant()))
    return 0


def cmd_spectrum(args) -> int:
    if args.symmetric:
        if args.family == "majority":
            if args.n % 2 == 0:
                raise ValueError("majority needs odd n")
            alpha = 0
        elif args.family == "threshold":
            if args.alpha is None:
                raise ValueError("threshold needs --alpha")
            alpha = families.canonical_alpha(args.n, args.alpha)
        else:
            raise ValueError("--symmetric supports only threshold and majority")
        text = serialize.dumps_symmetric_spectrum(threshold.threshold_spectrum_exact(args.n, alpha))
    else:
        f = _load_input_function(args.input) if args.input else _build_family(args)
        text = serialize.dumps_spectrum(walsh_transform(f))
    _write(args, text)
    return 0


def cmd_verify(args) -> int:
    report = inequalities.run_suite(
        args.suite, args.n_max, args.samples, args.seed, args.workers, args.d
    )
    _write(args, serialize.dumps_report(report))
    return 0 if report.failures == 0 else 1


def cmd_gamma(args) -> int:
    _write(args, serialize.dumps({"gamma": threshold.gamma_constant()}))
    return 0


TN_NOTE = (
    "sum starts at k=1: the printed k=0 term floor(N/0) is undefined; "
    "the coefficient bound behind the equation runs over 1 <= k <= N"
)


def cmd_tn(args) -> int:
    _write(args, serialize.dumps({"n": args.n, "t_n": threshold.tn_lower_bound(args.n), "note": TN_NOTE}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuberadius",
        description="Boolean radii of functions on the Boolean cube from their Fourier-Walsh spectra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    def add_family(p, need_n=True):
        p.add_argument(
            "--family",
            choices=["extremal", "dictator", "parity", "threshold", "majority", "biased"],
        )
        p.add_argument("--n", type=int, required=need_n, help="cube dimension")
        p.add_argument("--alpha", type=float, help="threshold level")
        p.add_argument("--lambda", dest="lam", type=float, help="bias of the +-1 indicator")
        p.add_argument("--m", type=int, help="parity on the first m coordinates")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("radius", help="Boolean radius of a family member or a truth-table JSON file")
    add_family(p, need_n=False)
    p.add_argument("--input", help="truth-table JSON file")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    add_common(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("bn", help="exact class radius 2^(1/N)-1, optionally brute-force confirmed")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="exhaust all sign tables (N <= 4)")
    p.add_argument("--workers", type=int, default=_default_workers())
    add_common(p)
    p.set_defaults(func=cmd_bn)

    p = sub.add_parser("threshold-scan", help="CSV scan of threshold-function radii")
    p.add_argument("--n-list", required=True, help="comma-separated dimensions")
    p.add_argument("--alphas", default="0,sqrt,half", help="comma list of integers, 'sqrt', 'half'")
    add_common(p)
    p.set_defaults(func=cmd_threshold_scan)

    p = sub.add_parser("majority-scan", help="CSV scan of majority radii against gamma/sqrt(N)")
    p.add_argument("--n-start", type=int, required=True)
    p.add_argument("--n-stop", type=int, required=True)
    p.add_argument("--workers", type=int, default=_default_workers())
    add_common(p)
    p.set_defaults(func=cmd_majority_scan)

    p = sub.add_parser("spectrum", help="dump a dense or symmetric spectrum as JSON")
    add_family(p)
    p.add_argument("--input", help="truth-table JSON file")
    p.add_argument("--symmetric", action="store_true", help="exact per-level spectrum (threshold/majority)")
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run an inequality suite; exit 0 iff no failures")
    p.add_argument(
        "--suite",
        required=True,
        choices=list(inequalities.ASSERTABLE_SUITES) + list(inequalities.REPORT_SUITES) + ["all"],
    )
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=100, help="random draws per mode per dimension")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, default=3, help="level cap for the low-degree draw mode")
    p.add_argument("--workers", type=int, default=_default_workers())
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gamma", help="the constant with int_0^gamma e^(u^2/2) du = sqrt(pi/2)")
    add_common(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("tn", help="lower-bound root t_N for degree-N disc polynomials")
    p.add_argument("--n", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_tn)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"cuberadius: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
