"""Exact moments of X_l(m, N), its real/imaginary parts, and symmetric functions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycElem, CycRat, CyclotomicContext
from .distribution import ExactPMF, _fmt, imag_key, real_key
from .exceptions import UsageError


@dataclass(frozen=True)
class MomentReport:
    k: int
    value: CycRat
    is_real: bool
    is_rational: bool
    predicted_zero: bool
    numeric: complex

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "value": self.value.to_json(),
            "is_real": self.is_real,
            "is_rational": self.is_rational,
            "predicted_zero": self.predicted_zero,
            "approx": [_fmt(self.numeric.real), _fmt(self.numeric.imag)],
        }
        if self.is_rational:
            out["exact"] = _ratstr(self.value.as_fraction())
        return out


def _ratstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _expectation(pmf: ExactPMF, values: dict[CycElem, CycElem] | None = None) -> CycRat:
    acc = pmf.ctx.zero()
    for z, c in pmf.entries.items():
        acc = acc + (values[z] if values is not None else z) * c
    return CycRat.of(acc, pmf.denominator)


def _report(pmf: ExactPMF, k: int, value: CycRat) -> MomentReport:
    cls = value.classify()
    return MomentReport(
        k=k,
        value=value,
        is_real=cls.is_real,
        is_rational=cls.is_rational,
        predicted_zero=k % pmf.ctx.d != 0,
        numeric=value.to_complex(),
    )


def moment(pmf: ExactPMF, k: int) -> MomentReport:
    """E[X**k] computed as sum(count * z**k) / C(N, m)."""
    if k < 1:
        raise UsageError(f"moment order must be positive, got {k}")
    return _report(pmf, k, _expectation(pmf, {z: z**k for z in pmf.entries}))


def moment_sequence(pmf: ExactPMF, k_max: int) -> list[MomentReport]:
    """Moments 1..k_max, reusing the running powers of every atom."""
    powers = {z: z for z in pmf.entries}
    out = []
    for k in range(1, k_max + 1):
        if k > 1:
            powers = {z: p * z for z, p in powers.items()}
        out.append(_report(pmf, k, _expectation(pmf, powers)))
    return out


def variance(pmf: ExactPMF) -> Fraction:
    """E|X|^2 - |E X|^2, exact."""
    second = _expectation(pmf, {z: z * z.conjugate() for z in pmf.entries})
    mean = _expectation(pmf)
    return (second - mean * mean.conjugate()).as_fraction()


def component_moments(pmf: ExactPMF, a: int, b: int) -> CycRat:
    """E[(2U)**a * (2jV)**b] with U, V the real and imaginary parts of X.

    The keys 2U = z + conj(z) and 2jV = z - conj(z) stay in the integer
    ring, so the result is exact.  Divide by 2**(a+b) * j**b for E[U^a V^b];
    :func:`component_moment_numeric` does that in floating point.
    """
    if a < 0 or b < 0 or a + b < 1:
        raise UsageError("need a, b >= 0 and a + b >= 1")
    vals = {z: real_key(z) ** a * imag_key(z) ** b for z in pmf.entries}
    return _expectation(pmf, vals)


def component_moment_numeric(pmf: ExactPMF, a: int, b: int) -> complex:
    return component_moments(pmf, a, b).to_complex() / (2 ** (a + b) * 1j**b)


def second_moment_U(pmf: ExactPMF) -> Fraction:
    """E[U**2] exactly."""
    return (component_moments(pmf, 2, 0) / 4).as_fraction()


def second_moment_V(pmf: ExactPMF) -> Fraction:
    """E[V**2] exactly; (2jV)**2 = -4 V**2."""
    return (-component_moments(pmf, 0, 2) / 4).as_fraction()


def paper_square_expectation(pmf: ExactPMF) -> CycRat:
    """E[U^2] + E[V^2] - 2j E[UV].

    This is the square-expectation convention for complex variables used when
    quoting E[X^2] equal to the variance; it differs from the algebraic E[X**2]
    returned by :func:`moment`.  With the integral keys,
    E[U^2] + E[V^2] = (E[(2U)^2] - E[(2jV)^2]) / 4 and 2j E[UV] = E[(2U)(2jV)] / 2.
    """
    a = component_moments(pmf, 2, 0)
    b = component_moments(pmf, 0, 2)
    c = component_moments(pmf, 1, 1)
    return (a - b) / 4 - c / 2


def power_sum(ctx: CyclotomicContext, n: int) -> int:
    """p_n(w, ..., w^N) = sum over k of w**(k n), evaluated exactly."""
    if n < 1:
        raise UsageError(f"power sum order must be positive, got {n}")
    acc = ctx.zero()
    for k in range(1, ctx.N + 1):
        acc = acc + ctx.root_power(k) ** n
    if not acc.is_rational():
        raise ArithmeticError(f"power sum p_{n} is not rational: {acc!r}")
    return acc.coeffs[0]


def elementary_symmetric_sequence(ctx: CyclotomicContext, n_max: int) -> list[CycRat]:
    """[sigma_0, ..., sigma_{n_max}] of (w, ..., w^N) via Newton's identities.

    n * sigma_n = sum_{i=1..n} (-1)**(i-1) * sigma_{n-i} * p_i
    """
    d = ctx.d
    p = [0] + [power_sum(ctx, i) for i in range(1, n_max + 1)]
    sig = [CycRat.from_fraction(d, 1)]
    for n in range(1, n_max + 1):
        acc = CycRat.from_fraction(d, 0)
        for i in range(1, n + 1):
            term = sig[n - i] * p[i]
            acc = acc + term if i % 2 else acc - term
        sig.append(acc / n)
    return sig


def elementary_symmetric(ctx: CyclotomicContext, n: int, cross_check: bool = True) -> CycRat:
    """sigma_n(w, ..., w^N), checked real and (for N <= 12) against direct expansion."""
    if not 1 <= n <= ctx.N:
        raise UsageError(f"n must lie in [1, {ctx.N}], got {n}")
    value = elementary_symmetric_sequence(ctx, n)[n]
    if not value.classify().is_real:
        raise ArithmeticError(f"sigma_{n} is not real: {value!r}")
    if cross_check and ctx.N <= 12:
        direct = elementary_symmetric_direct(ctx, n)
        if CycRat.of(direct) != value:
            raise ArithmeticError(f"Newton recurrence disagrees with expansion for sigma_{n}")
    return value


def elementary_symmetric_direct(ctx: CyclotomicContext, n: int) -> CycElem:
    """sigma_n by summing the products over all n-subsets."""
    acc = ctx.zero()
    roots = [ctx.root_power(k) for k in range(1, ctx.N + 1)]
    for subset in itertools.combinations(roots, n):
        prod = ctx.one()
        for r in subset:
            prod = prod * r
        acc = acc + prod
    return acc


def closed_form_variance(N: int, m: int) -> Fraction:
    """m (N - m) / (N - 1); the variance for every l in [1, N-1]."""
    if N < 2:
        raise UsageError("closed-form variance needs N >= 2")
    return Fraction(m * (N - m), N - 1)

