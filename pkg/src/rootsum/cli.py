"""Command-line entry point: ``rootsum <subcommand> [flags]``.

Exit codes: 0 success, 1 a mathematical check failed or a counterexample
was found, 2 usage error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .bernoulli import DEFAULT_MASK_BUDGET, pmf_tilde, tilde_moments
from .coherence import gram_magnitudes, partial_fourier_coherence
from .cyclotomic import new_context
from .distribution import (
    DEFAULT_BUDGET,
    abs_squared,
    default_threads,
    pmf_components,
    pmf_transform,
    pmf_X,
    uniformity_report,
)
from .exceptions import BudgetExceededError, UsageError
from .identities import IDENTITIES, cases_to_csv, check_identity, default_params
from .moments import (
    component_moments,
    moment_sequence,
    paper_square_expectation,
    variance,
)
from .montecarlo import cross_check, sample_estimate
from .verify import (
    CHECK_NAMES,
    SweepSpec,
    closed_form_check,
    conjecture_scan,
    run_sweep,
    trig_sum_check,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# identity limits used when --limit is not given
IDENTITY_LIMITS = {
    "identity_3_3": 200,
    "chu_vandermonde_central": 200,
    "identity_33": 60,
    "chu_vandermonde": 60,
    "remark_3_4_a": 60,
    "remark_3_4_b": 60,
    "remark_3_4_c": 12,
}


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _int_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or an integer, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _policy(text: str) -> str | list[int]:
    if text in ("all", "coprime", "coprime-only"):
        return text
    return _int_list(text)


# -- rendering ---------------------------------------------------------------


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields: list[str] = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def _table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)\n"
    fields = list(rows[0])
    cells = [[str(r.get(f, "")) for f in fields] for r in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) for i, f in enumerate(fields)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _emit(args: argparse.Namespace, payload: dict, rows: list[dict], csv_text: str | None = None) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = csv_text if csv_text is not None else _csv(rows)
    else:
        text = _table(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_pmf(args: argparse.Namespace) -> int:
    ctx = new_context(args.N, args.l)
    pmf = pmf_X(ctx, args.m, budget=args.budget, method=args.method, threads=args.threads)
    U, V, joint = pmf_components(pmf)
    payload = pmf.to_dict()
    payload["U"] = U.to_dict()
    payload["V"] = V.to_dict()
    payload["joint"] = [
        {"U_key": u.to_json(), "V_key": v.to_json(), "count": str(c)}
        for (u, v), c in sorted(joint.items(), key=lambda kv: (kv[0][0].coeffs, kv[0][1].coeffs))
    ]
    if args.power:
        payload["power"] = {"k": args.power, "law": pmf_transform(pmf, args.power).to_dict()["atoms"]}
    payload["abs_squared"] = abs_squared(pmf).to_dict()["atoms"]
    payload["uniformity"] = uniformity_report(ctx, args.m, budget=args.budget).to_dict()
    rows = [{"coeffs": a["coeffs"], "re": a["approx"][0], "im": a["approx"][1], "count": a["count"],
             "probability": _q(Fraction(int(a["count"]), pmf.denominator))} for a in payload["atoms"]]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_moments(args: argparse.Namespace) -> int:
    ctx = new_context(args.N, args.l)
    pmf = pmf_X(ctx, args.m, budget=args.budget)
    reports = moment_sequence(pmf, args.k_max)
    payload = {
        "N": args.N, "l": args.l, "m": args.m,
        "moments": [r.to_dict() for r in reports],
        "variance": _q(variance(pmf)),
        "E_2U_squared": component_moments(pmf, 2, 0).to_json(),
        "E_2jV_squared": component_moments(pmf, 0, 2).to_json(),
        "E_2U_2jV": component_moments(pmf, 1, 1).to_json(),
        "square_expectation_UV": paper_square_expectation(pmf).to_json(),
    }
    rows = [{"k": r.k, "exact": r.to_dict().get("exact", ""), "re": r.to_dict()["approx"][0],
             "im": r.to_dict()["approx"][1], "is_real": r.is_real, "predicted_zero": r.predicted_zero}
            for r in reports]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "closed-form":
        reps = [closed_form_check(l, m) for l in range(args.l_min, args.l_max + 1) for m in range(1, 2 * l + 1)]
        return _emit_cases(args, "closed-form", reps)
    if args.suite == "trig":
        lo, hi = args.N_range
        reps = [trig_sum_check(N, l) for N in range(max(lo, 2), hi + 1) for l in range(1, N)]
        return _emit_cases(args, "trig", reps)
    checks = frozenset(args.checks) if args.checks else None
    spec = SweepSpec(args.N_range, args.l_policy, args.m_policy, args.k_max, checks, args.budget)
    report = run_sweep(spec, threads=args.threads)
    _emit(args, report.to_dict(), report.rows, report.to_csv())
    return EXIT_OK if report.passed else EXIT_FAIL


def _emit_cases(args: argparse.Namespace, kind: str, reps: list) -> int:
    rows = []
    for rep in reps:
        for c in rep.checks:
            rows.append({**rep.case, "check": c.name, "status": c.status, "expected": c.expected or "",
                         "got": c.got or "", "reason": c.reason or ""})
    ok = all(r.passed for r in reps)
    payload = {"kind": kind, "verdict": "pass" if ok else "fail", "cases_run": len(reps),
               "failures": [r for r in rows if r["status"] == "fail"], "rows": rows}
    _emit(args, payload, rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scan(args: argparse.Namespace) -> int:
    report = conjecture_scan(args.N_max, budget=args.budget, literal_range=args.literal_range)
    _emit(args, report.to_dict(), report.rows, report.to_csv())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_identities(args: argparse.Namespace) -> int:
    names = args.name or sorted(IDENTITIES)
    cases = []
    for name in names:
        if name not in IDENTITIES:
            raise UsageError(f"unknown identity {name!r}; known: {', '.join(sorted(IDENTITIES))}")
        limit = args.limit if args.limit is not None else IDENTITY_LIMITS[name]
        cases += check_identity(name, default_params(name, limit))
    ok = all(c.holds and c.divisible for c in cases)
    failures = [c.to_row() for c in cases if not (c.holds and c.divisible)]
    summary = [{"name": n, "cases": sum(c.name == n for c in cases),
                "failures": sum(c.name == n and not c.holds for c in cases)} for n in names]
    payload = {"kind": "identities", "verdict": "pass" if ok else "fail", "summary": summary, "failures": failures}
    rows = summary if args.format == "table" else [c.to_row() for c in cases]
    _emit(args, payload, rows, cases_to_csv(cases))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bernoulli(args: argparse.Namespace) -> int:
    ctx = new_context(args.N, args.l)
    rep = tilde_moments(ctx, args.m, args.k_max, mask_budget=args.mask_budget, budget=args.budget)
    payload = rep.to_dict()
    payload["law"] = pmf_tilde(ctx, args.m, args.mask_budget).to_dict()
    rows = [{"k": r["k"], "tilde": r["tilde"], "x": r.get("x", ""), "delta": r.get("delta", "")} for r in rep.comparison]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    if args.cross_check:
        res = cross_check(args.N, args.l, args.m, args.trials, args.seed, budget=args.budget)
        _emit(args, res.to_dict(), res.atoms)
        return EXIT_OK if res.passed else EXIT_FAIL
    est = sample_estimate(args.N, args.l, args.m, args.trials, args.seed, threads=args.threads)
    payload = est.to_dict()
    ok = abs(est.z_score) <= 5 and (args.l == 0 or abs(est.mean_hat) <= est.mean_band)
    payload["within_band"] = ok
    _emit(args, payload, [payload])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coherence(args: argparse.Namespace) -> int:
    if args.rows is not None:
        rows = args.rows
    elif args.m is not None:
        if args.seed is None:
            raise UsageError("random rows need --seed")
        rows = sorted(random.Random(args.seed).sample(range(args.N), args.m))
    else:
        raise UsageError("give --rows or --m with --seed")
    rep = partial_fourier_coherence(args.N, rows)
    if args.pairs_csv:
        G = gram_magnitudes(args.N, rep.rows)
        with open(args.pairs_csv, "w", encoding="utf-8", newline="") as fh:
            fh.write("i,j,magnitude\n")
            for i in range(args.N):
                for j in range(i + 1, args.N):
                    fh.write(f"{i},{j},{float(G[i, j]):.12g}\n")
    payload = rep.to_dict()
    _emit(args, payload, [payload])
    return EXIT_OK if rep.satisfied else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "table"), default="json", help="output format (default json)")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def _nlm(p: argparse.ArgumentParser, need_m: bool = True) -> None:
    p.add_argument("--N", type=int, required=True, help="signal length N; roots are w**n, n = 1..N")
    p.add_argument("--l", type=int, required=True, help="frequency index l in [0, N-1]; w = exp(-2 pi j l / N)")
    if need_m:
        p.add_argument("--m", type=int, required=True, help="number of retained samples m in [1, N]; the variable is a sum of m distinct roots")


def _budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help=f"largest C(N, m) to enumerate exactly (default {DEFAULT_BUDGET})")


def _threads(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=default_threads(),
                   help="worker count (default from ROOTSUM_THREADS, else 1); results do not depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootsum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rootsum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmf", help="exact law of X, its real/imaginary parts, and uniformity",
                       description="Exact law P(X = z) = #{m-subsets with root sum z} / C(N, m); "
                                   "laws of U = Re X and V = Im X; support size against C(N, m).")
    _nlm(p)
    _budget(p)
    _threads(p)
    p.add_argument("--method", choices=("classes", "enumerate"), default="classes",
                   help="aggregate by exponent classes (fast) or walk every m-subset in colex order")
    p.add_argument("--power", type=int, help="also report the law of X**k for this k")
    _common(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("moments", help="exact moments E[X^k] and component moments",
                       description="E[X^k] for k <= k-max (zero whenever N/gcd(N,l) does not divide k), "
                                   "Var X = m(N-m)/(N-1), and E[U^2] + E[V^2] - 2j E[UV].")
    _nlm(p)
    p.add_argument("--k-max", type=int, default=8, help="highest moment order k")
    _budget(p)
    _common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("verify", help="sweep the exact theorem checks",
                       description="Suites: 'theorems' (means, variances, vanishing and real moments, "
                                   "antisymmetry X_l(m) ~ -X_l(N-m), symmetry of V); 'closed-form' (N = 2l "
                                   "hypergeometric law and variance m(2l-m)/(2l-1)); 'trig' (cosine/sine sums).")
    p.add_argument("--suite", choices=("theorems", "closed-form", "trig"), default="theorems")
    p.add_argument("--N-range", dest="N_range", type=_int_range, default=(2, 8), help="inclusive range A..B of N")
    p.add_argument("--l-policy", type=_policy, default="all", help="all | coprime | comma list of l")
    p.add_argument("--m-policy", type=_policy, default="all", help="all | coprime | comma list of m")
    p.add_argument("--k-max", type=int, default=8, help="moment orders k checked for vanishing/realness")
    p.add_argument("--checks", type=lambda s: s.split(","), help=f"subset of: {', '.join(CHECK_NAMES)}")
    p.add_argument("--l-min", type=int, default=1, help="closed-form suite: smallest l")
    p.add_argument("--l-max", type=int, default=8, help="closed-form suite: largest l (N = 2l)")
    _budget(p)
    _threads(p)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-conjecture", help="scan 'uniform iff N prime' over coprime l and m",
                       description="For N <= N-max, every l and m coprime to N with 2 <= m <= N-2 "
                                   "(or N-1 with --literal-range): is every m-subset sum distinct?")
    p.add_argument("--N-max", dest="N_max", type=int, required=True, help="largest N scanned (>= 3)")
    p.add_argument("--literal-range", action="store_true", help="allow m = N-1 (uniform for every N)")
    _budget(p)
    _common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("identities", help="big-integer binomial identity checks",
                       description="Checks identities such as sum (2k-m)^2 C(l,k) C(l,m-k) = "
                                   "m(2l-m)/(2l-1) C(2l,m) with denominators cleared.")
    p.add_argument("--name", action="append", help=f"identity to check (repeatable): {', '.join(sorted(IDENTITIES))}")
    p.add_argument("--limit", type=int, help="largest leading parameter (l, or m for one-parameter identities)")
    _common(p)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("bernoulli", help="Bernoulli-mask companion: exact law and moments",
                       description="Sum of w**n B_n with B_n iid Bernoulli(m/N); Var = m(N-m)/N "
                                   "compared against m(N-m)/(N-1) for the fixed-size model.")
    _nlm(p)
    p.add_argument("--k-max", type=int, default=4, help="highest moment order")
    p.add_argument("--mask-budget", type=int, default=DEFAULT_MASK_BUDGET, help="largest N for 2^N mask enumeration")
    _budget(p)
    _common(p)
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("sample", help="Monte Carlo estimate of mean and variance",
                       description="Uniform random m-subsets; empirical Var against m(N-m)/(N-1) with a z-score.")
    _nlm(p)
    p.add_argument("--trials", type=int, required=True, help="number of sampled subsets")
    p.add_argument("--seed", type=int, required=True, help="64-bit seed (mandatory for reproducibility)")
    p.add_argument("--cross-check", action="store_true", help="compare atom frequencies with the exact law")
    _budget(p)
    _threads(p)
    _common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("coherence", help="partial Fourier coherence vs the Welch bound",
                       description="Coherence of the m x N matrix exp(-2 pi j r c / N)/sqrt(m) over 0-based "
                                   "rows r, against sqrt((N-m)/(m(N-1))) = sigma[X]/m.")
    p.add_argument("--N", type=int, required=True, help="number of columns N")
    p.add_argument("--rows", type=_int_list, help="comma list of distinct 0-based row indices")
    p.add_argument("--m", type=int, help="draw this many random rows (needs --seed)")
    p.add_argument("--seed", type=int, help="seed for random rows")
    p.add_argument("--pairs-csv", help="also write every column-pair magnitude to this CSV")
    _common(p)
    p.set_defaults(func=cmd_coherence)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except UsageError as exc:
        print(f"rootsum: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"rootsum: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())
