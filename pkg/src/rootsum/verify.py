"""Sweep harness: exact checks of the distributional theorems over (N, l, m, k)."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycElem, new_context
from .distribution import (
    DEFAULT_BUDGET,
    pmf_components,
    pmf_X,
    uniformity_report,
)
from .exceptions import BudgetExceededError, UsageError
from .identities import check_identity
from .moments import (
    closed_form_variance,
    component_moments,
    moment_sequence,
    paper_square_expectation,
    second_moment_U,
    second_moment_V,
    variance,
)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
NOT_APPLICABLE = "not-applicable"

CHECK_NAMES = (
    "mean_zero",
    "variance",
    "component_means",
    "component_second_moments",
    "uv_cross_moment",
    "square_expectation",
    "component_variances",
    "moment_vanishing",
    "moments_real",
    "odd_v_moments",
    "antisymmetry",
    "complement_symmetry",
    "v_symmetry",
)

TRIG_TOL = 1e-9


@dataclass
class CheckResult:
    name: str
    status: str
    expected: str | None = None
    got: str | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class CaseReport:
    case: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def status_of(self, name: str) -> str:
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def add(self, name: str, ok: bool, expected: object = None, got: object = None) -> None:
        self.checks.append(CheckResult(name, PASS if ok else FAIL, _s(expected), _s(got)))

    def skip(self, name: str, reason: str, status: str = SKIPPED, got: object = None) -> None:
        self.checks.append(CheckResult(name, status, got=_s(got), reason=reason))

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _s(x: object) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _is_symmetric(entries: dict[CycElem, int]) -> bool:
    return all(entries.get(-k, 0) == c for k, c in entries.items())


def verify_case(N: int, l: int, m: int, k_max: int, budget: int = DEFAULT_BUDGET) -> CaseReport:
    """Run every exact check on X_l(m, N); returns one verdict per check."""
    if k_max < 1:
        raise UsageError("k_max must be >= 1")
    ctx = new_context(N, l)
    pmf = pmf_X(ctx, m, budget=budget)
    U, V, _ = pmf_components(pmf)
    rep = CaseReport({"N": N, "l": l, "m": m, "k_max": k_max})
    real_case = l == 0 or 2 * l == N
    moments = moment_sequence(pmf, k_max)
    mean = moments[0].value

    if l == 0:
        rep.skip("mean_zero", "requires 1 <= l <= N-1", NOT_APPLICABLE, got=mean.as_fraction())
    else:
        rep.add("mean_zero", not mean, 0, mean.to_json())

    var = variance(pmf)
    if l == 0 or N < 2:
        rep.add("variance", var == 0, 0, var)
    else:
        expected = closed_form_variance(N, m)
        rep.add("variance", var == expected, expected, var)

    eu, ev = component_moments(pmf, 1, 0), component_moments(pmf, 0, 1)
    if l == 0:
        rep.skip("component_means", "requires 1 <= l <= N-1", NOT_APPLICABLE)
    else:
        rep.add("component_means", not eu and not ev, "0, 0", f"{eu.to_json()}, {ev.to_json()}")

    if real_case:
        reason = "l = 0" if l == 0 else "N = 2l"
        rep.skip("component_second_moments", f"{reason}: hypothesis N != 2l, l >= 1 not met")
        rep.skip("component_variances", f"{reason}: hypothesis N != 2l, l >= 1 not met")
    else:
        expected = Fraction(m * (N - m), 2 * (N - 1))
        u2, v2 = second_moment_U(pmf), second_moment_V(pmf)
        rep.add("component_second_moments", u2 == expected == v2, expected, f"{_s(u2)}, {_s(v2)}")
        # Var U = (E[(2U)^2] - E[2U]^2) / 4 ; Var V = -(E[(2jV)^2] - E[2jV]^2) / 4
        var_u = (component_moments(pmf, 2, 0) - eu * eu) / 4
        var_v = -(component_moments(pmf, 0, 2) - ev * ev) / 4
        ok = var_u.classify().rational_value == expected == var_v.classify().rational_value
        rep.add("component_variances", ok, expected, f"{var_u.to_json()}, {var_v.to_json()}")

    uv = component_moments(pmf, 1, 1)
    rep.add("uv_cross_moment", not uv, 0, uv.to_json())

    sq = paper_square_expectation(pmf)
    if l == 0:
        rep.add("square_expectation", sq.classify().rational_value == m * m, m * m, sq.to_json())
    else:
        expected = closed_form_variance(N, m)
        rep.add("square_expectation", sq.classify().rational_value == expected, expected, sq.to_json())

    ks = [r.k for r in moments if r.predicted_zero]
    if l == 0 or not ks:
        rep.skip("moment_vanishing", f"no k <= {k_max} with {ctx.d} not dividing k", NOT_APPLICABLE)
    else:
        bad = [r.k for r in moments if r.predicted_zero and r.value]
        rep.add("moment_vanishing", not bad, f"E[X^k] = 0 for k in {ks}", f"nonzero at k={bad}" if bad else "all zero")

    nonreal = [r.k for r in moments if not r.is_real]
    rep.add("moments_real", not nonreal, "all real", f"non-real at k={nonreal}" if nonreal else "all real")

    odd_bad = []
    for k in range(1, k_max + 1, 2):
        if component_moments(pmf, 0, k):
            odd_bad.append(k)
    rep.add("odd_v_moments", not odd_bad, "0 for odd k", f"nonzero at k={odd_bad}" if odd_bad else "all zero")

    if 1 <= m <= N - 1:
        other = pmf_X(ctx, N - m, budget=budget)
        if l == 0:
            rep.skip("antisymmetry", "l = 0: the full root sum is N, not 0, so X_0(m) = N - X_0(N-m) "
                     "(see complement_symmetry)", NOT_APPLICABLE)
        else:
            same = pmf.entries == other.negated().entries
            rep.add("antisymmetry", same, f"law of -X_l({N - m})", "equal" if same else "differs")
        full = ctx.subset_sum(range(1, N + 1))
        same = pmf.entries == other.pushforward(lambda z: full - z).entries
        rep.add("complement_symmetry", same, f"law of S - X_l({N - m}), S = {full.to_json()}",
                "equal" if same else "differs")
    else:
        rep.skip("antisymmetry", "requires 1 <= m <= N-1", NOT_APPLICABLE)
        rep.skip("complement_symmetry", "requires 1 <= m <= N-1", NOT_APPLICABLE)

    sym = _is_symmetric(V.entries)
    rep.add("v_symmetry", sym, "P(V=x) = P(V=-x)", "symmetric" if sym else "asymmetric")
    return rep


# -- sweeps ------------------------------------------------------------------


def _policy_values(policy: str | Sequence[int], N: int, lo: int, hi: int) -> list[int]:
    if policy == "all":
        return list(range(lo, hi + 1))
    if policy in ("coprime", "coprime-only"):
        return [x for x in range(lo, hi + 1) if math.gcd(x, N) == 1]
    return [x for x in policy if lo <= x <= hi]


@dataclass
class SweepSpec:
    N_range: tuple[int, int]
    l_policy: str | Sequence[int] = "all"
    m_policy: str | Sequence[int] = "all"
    k_max: int = 8
    checks: frozenset[str] | None = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        lo, hi = self.N_range
        if lo < 1 or hi < lo:
            raise UsageError(f"empty N range {self.N_range}")
        if self.k_max < 1:
            raise UsageError("k_max must be >= 1")
        if self.checks is not None:
            unknown = set(self.checks) - set(CHECK_NAMES)
            if unknown:
                raise UsageError(f"unknown checks: {sorted(unknown)}")

    def cases(self) -> list[tuple[int, int, int]]:
        out = []
        for N in range(self.N_range[0], self.N_range[1] + 1):
            for l in _policy_values(self.l_policy, N, 0, N - 1):
                for m in _policy_values(self.m_policy, N, 1, N):
                    out.append((N, l, m))
        return out


@dataclass
class SweepReport:
    kind: str
    header: dict
    cases_run: int = 0
    failures: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and not self.counterexamples

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "header": self.header,
            "verdict": "pass" if self.passed else "fail",
            "cases_run": self.cases_run,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
            "skipped": self.skipped,
            "rows": self.rows,
        }
        if include_timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields: list[str] = []
        for row in self.rows:
            for k in row:
                if k not in fields:
                    fields.append(k)
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()


def _run_case(args: tuple[int, int, int, int, int]) -> CaseReport | tuple[str, int]:
    N, l, m, k_max, budget = args
    try:
        return verify_case(N, l, m, k_max, budget)
    except BudgetExceededError as exc:
        return ("budget", exc.size)


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepReport:
    start = time.perf_counter()
    report = SweepReport(
        "theorem-sweep",
        {
            "N_range": list(spec.N_range),
            "l_policy": spec.l_policy if isinstance(spec.l_policy, str) else list(spec.l_policy),
            "m_policy": spec.m_policy if isinstance(spec.m_policy, str) else list(spec.m_policy),
            "k_max": spec.k_max,
            "checks": sorted(spec.checks) if spec.checks else "all",
            "budget": str(spec.budget),
        },
    )
    jobs = [(N, l, m, spec.k_max, spec.budget) for N, l, m in spec.cases()]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_case, jobs, chunksize=8))
    else:
        results = [_run_case(j) for j in jobs]
    for (N, l, m, _, _), res in zip(jobs, results):
        if isinstance(res, tuple):
            report.skipped.append({"N": N, "l": l, "m": m, "reason": f"budget exceeded: C(N,m) = {res[1]}"})
            continue
        report.cases_run += 1
        for chk in res.checks:
            if spec.checks and chk.name not in spec.checks:
                continue
            row = {"N": N, "l": l, "m": m, "check": chk.name, "status": chk.status,
                   "expected": chk.expected or "", "got": chk.got or "", "reason": chk.reason or ""}
            report.rows.append(row)
            if chk.status == FAIL:
                report.failures.append(row)
    report.elapsed = time.perf_counter() - start
    return report


# -- uniformity conjecture ---------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def conjecture_scan(N_max: int, budget: int = DEFAULT_BUDGET, literal_range: bool = False, N_min: int = 3) -> SweepReport:
    """Test "uniform iff N prime" over l, m coprime to N.

    The default m range is 2 <= m <= N-2: m = N-1 is uniform for every N by
    antisymmetry with m = 1, so including it makes the "only if" direction
    fail trivially.  ``literal_range=True`` scans 2 <= m <= N-1 instead.
    """
    if N_max < 3:
        raise UsageError("N_max must be >= 3")
    start = time.perf_counter()
    m_hi = (lambda N: N - 1) if literal_range else (lambda N: N - 2)
    report = SweepReport(
        "conjecture-scan",
        {
            "N_range": [N_min, N_max],
            "l_range": "1 <= l <= N-1, gcd(l, N) = 1",
            "m_range": "2 <= m <= N-1" if literal_range else "2 <= m <= N-2",
            "m_condition": "gcd(m, N) = 1",
            "statement": "X_l(m,N) uniform <=> N prime",
            "budget": str(budget),
        },
    )
    vacuous = []
    for N in range(N_min, N_max + 1):
        ls = [l for l in range(1, N) if math.gcd(l, N) == 1]
        ms = [m for m in range(2, m_hi(N) + 1) if math.gcd(m, N) == 1]
        if not ms:
            vacuous.append(N)
            continue
        prime = is_prime(N)
        for l in ls:
            for m in ms:
                try:
                    u = uniformity_report(new_context(N, l), m, budget=budget, max_witnesses=1)
                except BudgetExceededError as exc:
                    report.skipped.append({"N": N, "l": l, "m": m, "reason": f"budget exceeded: C(N,m) = {exc.size}"})
                    continue
                report.cases_run += 1
                row = {"N": N, "l": l, "m": m, "is_uniform": u.is_uniform, "N_prime": prime,
                       "support_size": str(u.support_size), "binom": str(u.binom)}
                report.rows.append(row)
                if u.is_uniform != prime:
                    ce = dict(row)
                    ce["witness"] = [list(s) for s in u.collision_witnesses[0]] if u.collision_witnesses else None
                    report.counterexamples.append(ce)
    report.header["vacuous_N"] = vacuous
    report.elapsed = time.perf_counter() - start
    return report


# -- the real-valued family N = 2l ------------------------------------------


def closed_form_check(l: int, m: int) -> CaseReport:
    """Compare the enumerated law of X_l(m, 2l) with its hypergeometric closed form."""
    if l < 1 or not 1 <= m <= 2 * l:
        raise UsageError(f"need l >= 1 and 1 <= m <= 2l, got l={l}, m={m}")
    N = 2 * l
    ctx = new_context(N, l)
    pmf = pmf_X(ctx, m)
    rep = CaseReport({"N": N, "l": l, "m": m})
    total = math.comb(N, m)
    closed = {
        CycElem.from_int(ctx.d, 2 * k - m): Fraction(math.comb(l, k) * math.comb(l, m - k), total)
        for k in range(max(0, m - l), min(m, l) + 1)
    }
    law = pmf.probabilities()
    rep.add("hypergeometric_law", law == closed, _law_str(closed), _law_str(law))
    if m == l:
        central = {CycElem.from_int(ctx.d, 2 * k - l): Fraction(math.comb(l, k) ** 2, total) for k in range(l + 1)}
        rep.add("central_law", law == central, _law_str(central), _law_str(law))
    else:
        rep.skip("central_law", "requires m = l", NOT_APPLICABLE)
    mean = sum((Fraction(k.coeffs[0]) * p for k, p in law.items()), Fraction(0))
    rep.add("mean_zero", mean == 0, 0, mean)
    var = variance(pmf)
    expected = Fraction(m * (2 * l - m), 2 * l - 1)
    rep.add("variance", var == expected, expected, var)
    ident = check_identity("identity_33", [(l, m)])[0]
    rep.add("variance_identity", ident.holds, ident.rhs, ident.lhs)
    return rep


def _law_str(law: dict[CycElem, Fraction]) -> str:
    return "{" + ", ".join(f"{k.coeffs[0]}: {_s(p)}" for k, p in sorted(law.items(), key=lambda kv: kv[0].coeffs)) + "}"


def trig_sum_check(N: int, l: int, tol: float = TRIG_TOL) -> CaseReport:
    """Cancellation of sum cos(2 pi k l / N), sum sin(...), and the doubled-angle sums."""
    if not 1 <= l <= N - 1:
        raise UsageError(f"need 1 <= l <= N-1, got N={N}, l={l}")
    rep = CaseReport({"N": N, "l": l, "tol": tol})

    def sums(factor: int) -> tuple[float, float]:
        angles = [factor * math.pi * k * l / N for k in range(1, N + 1)]
        return math.fsum(math.cos(a) for a in angles), math.fsum(math.sin(a) for a in angles)

    c, s = sums(2)
    rep.add("single_angle_cos", abs(c) < tol, 0, repr(c))
    rep.add("single_angle_sin", abs(s) < tol, 0, repr(s))
    if 2 * l == N:
        c2, _ = sums(4)
        rep.skip("double_angle_cos", f"N = 2l: the cosine sum equals {c2:.12g}")
        rep.skip("double_angle_sin", "N = 2l")
    else:
        c2, s2 = sums(4)
        rep.add("double_angle_cos", abs(c2) < tol, 0, repr(c2))
        rep.add("double_angle_sin", abs(s2) < tol, 0, repr(s2))
    return rep

