"""The Bernoulli-mask companion of X_l(m, N).

Each root w**n is kept independently with probability m/N.  A mask with s
kept roots has weight m**s * (N - m)**(N - s) over the common denominator
N**N, so the whole law stays in integer arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycElem, CyclotomicContext
from .distribution import DEFAULT_BUDGET, ExactPMF, class_dp, pmf_X
from .exceptions import BudgetExceededError, UsageError
from .moments import MomentReport, closed_form_variance, moment_sequence, variance

DEFAULT_MASK_BUDGET = 22


@dataclass
class MaskPMF(ExactPMF):
    """Law of the Bernoulli companion; ``denominator`` is N**N."""

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["model"] = "bernoulli"
        return out


def pmf_tilde(ctx: CyclotomicContext, m: int, mask_budget: int = DEFAULT_MASK_BUDGET) -> MaskPMF:
    N = ctx.N
    if not 1 <= m <= N:
        raise UsageError(f"m must lie in [1, {N}], got {m!r}")
    if N > mask_budget:
        raise BudgetExceededError(
            f"2^N = 2^{N} masks exceeds the mask budget 2^{mask_budget}; use the sampling module",
            2**N,
            2**mask_budget,
        )
    weights: Counter = Counter()
    for (key, s), count in class_dp(ctx).items():
        weights[key] += count * m**s * (N - m) ** (N - s)
    entries = {CycElem(ctx.d, key): w for key, w in weights.items() if w}
    return MaskPMF(ctx, m, entries, N**N)


def binomial_law(N: int, m: int) -> dict[int, Fraction]:
    """P(k) = C(N, k) p^k (1-p)^(N-k) with p = m / N."""
    p = Fraction(m, N)
    law = {k: math.comb(N, k) * p**k * (1 - p) ** (N - k) for k in range(N + 1)}
    return {k: q for k, q in law.items() if q}


@dataclass
class TildeReport:
    N: int
    l: int
    m: int
    moments: list[MomentReport]
    variance: Fraction
    closed_form_variance: Fraction
    x_variance: Fraction | None
    comparison: list[dict]

    @property
    def variance_ratio(self) -> Fraction | None:
        if not self.x_variance:
            return None
        return self.variance / self.x_variance

    def to_dict(self) -> dict:
        q = lambda f: None if f is None else f"{f.numerator}/{f.denominator}"  # noqa: E731
        return {
            "N": self.N,
            "l": self.l,
            "m": self.m,
            "moments": [r.to_dict() for r in self.moments],
            "variance": q(self.variance),
            "closed_form_variance": q(self.closed_form_variance),
            "x_variance": q(self.x_variance),
            "variance_ratio": q(self.variance_ratio),
            "comparison": self.comparison,
        }


def tilde_moments(
    ctx: CyclotomicContext,
    m: int,
    k_max: int,
    mask_budget: int = DEFAULT_MASK_BUDGET,
    budget: int = DEFAULT_BUDGET,
) -> TildeReport:
    """Exact moments of the companion and a side-by-side table against X_l(m, N)."""
    law = pmf_tilde(ctx, m, mask_budget)
    reports = moment_sequence(law, k_max)
    var = variance(law)
    try:
        x_pmf = pmf_X(ctx, m, budget=budget)
    except BudgetExceededError:
        x_pmf = None
    x_var = variance(x_pmf) if x_pmf is not None else (closed_form_variance(ctx.N, m) if ctx.l else Fraction(0))
    rows = []
    x_moments = moment_sequence(x_pmf, k_max) if x_pmf is not None else None
    for i, r in enumerate(reports):
        row = {"k": r.k, "tilde": r.value.to_json()}
        if x_moments is not None:
            xv = x_moments[i].value
            row["x"] = xv.to_json()
            row["delta"] = (r.value - xv).to_json()
        rows.append(row)
    return TildeReport(ctx.N, ctx.l, m, reports, var, Fraction(m * (ctx.N - m), ctx.N), x_var, rows)
