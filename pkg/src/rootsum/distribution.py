"""Exact laws of X_l(m, N): the sum of m distinct roots drawn from {w**n}.

The probability of a value z is (number of m-subsets S of {1..N} whose
root sum equals z) / C(N, m).  Laws are stored as integer counts keyed by
canonical :class:`~rootsum.cyclotomic.CycElem` values.
"""

from __future__ import annotations

import math
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .cyclotomic import CycElem, CyclotomicContext, new_context
from .exceptions import BudgetExceededError, UsageError

DEFAULT_BUDGET = 10**7
MAX_WITNESSES = 16

REAL_PART = "real-part"
IMAG_PART = "imag-part"


def check_budget(size: int, budget: int, what: str = "C(N,m)") -> None:
    if size > budget:
        raise BudgetExceededError(
            f"{what} = {size} exceeds the enumeration budget {budget}", size, budget
        )


def _check_m(ctx: CyclotomicContext, m: int) -> None:
    if not isinstance(m, int) or not 1 <= m <= ctx.N:
        raise UsageError(f"m must lie in [1, {ctx.N}], got {m!r}")


# -- colexicographic subset enumeration -------------------------------------


def colex_unrank(rank: int, m: int) -> list[int]:
    """0-based m-combination with the given colex rank.

    Uses the combinatorial number system: rank = sum C(c_i, i), c_1 < ... < c_m.
    """
    comb = [0] * m
    for i in range(m, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        comb[i - 1] = c
        rank -= math.comb(c, i)
    return comb


def colex_rank(comb: list[int]) -> int:
    return sum(math.comb(c, i + 1) for i, c in enumerate(comb))


def iter_colex(N: int, m: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield m-subsets of {1..N} (1-based, sorted) in colex order, ranks [start, stop)."""
    total = math.comb(N, m)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    if m == 0:
        yield ()
        return
    comb = colex_unrank(start, m)
    for _ in range(stop - start):
        yield tuple(c + 1 for c in comb)
        # successor: bump the lowest entry that has room, reset those below it
        i = 0
        while i < m - 1 and comb[i] + 1 == comb[i + 1]:
            i += 1
        comb[i] += 1
        for j in range(i):
            comb[j] = j


# -- exact probability mass functions ---------------------------------------


@dataclass
class ExactPMF:
    """Exact law: canonical value -> integer count over ``denominator``."""

    ctx: CyclotomicContext
    m: int
    entries: dict[CycElem, int]
    denominator: int

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def total(self) -> int:
        return sum(self.entries.values())

    def probability(self, key: CycElem) -> Fraction:
        return Fraction(self.entries.get(key, 0), self.denominator)

    def probabilities(self) -> dict[CycElem, Fraction]:
        return {k: Fraction(c, self.denominator) for k, c in self.entries.items()}

    def pushforward(self, fn: Callable[[CycElem], CycElem]) -> ExactPMF:
        out: Counter = Counter()
        for key, c in self.entries.items():
            out[fn(key)] += c
        return ExactPMF(self.ctx, self.m, dict(out), self.denominator)

    def negated(self) -> ExactPMF:
        return self.pushforward(lambda z: -z)

    def sorted_atoms(self) -> list[tuple[CycElem, int]]:
        return sorted(self.entries.items(), key=lambda kv: kv[0].coeffs)

    def to_dict(self) -> dict:
        return {
            "N": self.ctx.N,
            "l": self.ctx.l,
            "m": self.m,
            "denominator": str(self.denominator),
            "atoms": [
                {"coeffs": key.to_json(), "approx": _approx(key.to_complex()), "count": str(c)}
                for key, c in self.sorted_atoms()
            ],
        }


def _approx(z: complex) -> list[float]:
    return [_fmt(z.real), _fmt(z.imag)]


def _fmt(x: float) -> float:
    # 12 significant digits; also folds -0.0 into 0.0 for stable output
    return float(f"{x:.12g}") + 0.0


def class_dp(ctx: CyclotomicContext, max_size: int | None = None, exact_size: int | None = None) -> dict[tuple[tuple[int, ...], int], int]:
    """Number of subsets of {1..N} per (canonical sum, subset size).

    Every exponent class e in [0, d) holds exactly g equal roots, so choosing
    c_e roots from each class can be done in prod C(g, c_e) ways; the DP runs
    over the d classes instead of the N roots.
    """
    g = ctx.g
    cap = ctx.N if max_size is None else max_size
    if exact_size is not None:
        cap = min(cap, exact_size)
    binoms = [math.comb(g, c) for c in range(g + 1)]
    powers = [ctx.root_power(n).coeffs for n in range(1, ctx.N + 1)]
    class_vec: dict[int, tuple[int, ...]] = {}
    for n in range(1, ctx.N + 1):
        class_vec.setdefault(ctx.exponent_of(n), powers[n - 1])
    states: dict[tuple[tuple[int, ...], int], int] = {(ctx.zero().coeffs, 0): 1}
    remaining = ctx.N
    for e in sorted(class_vec):
        vec = class_vec[e]
        remaining -= g
        nxt: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
        for (key, s), cnt in states.items():
            acc = key
            for c in range(0, min(g, cap - s) + 1):
                if c:
                    acc = tuple(a + b for a, b in zip(acc, vec))
                if exact_size is not None and s + c + remaining < exact_size:
                    continue
                nxt[(acc, s + c)] += cnt * binoms[c]
        states = nxt
    return dict(states)


def _enumerate_range(N: int, l: int, m: int, start: int, stop: int) -> dict[tuple[int, ...], int]:
    ctx = new_context(N, l)
    vecs = ctx.root_vectors
    phi = ctx.phi_d
    counts: Counter = Counter()
    for subset in iter_colex(N, m, start, stop):
        acc = [0] * phi
        for n in subset:
            for i, c in enumerate(vecs[n - 1]):
                acc[i] += c
        counts[tuple(acc)] += 1
    return dict(counts)


def _enumerate_counts(ctx: CyclotomicContext, m: int, threads: int) -> dict[tuple[int, ...], int]:
    total = math.comb(ctx.N, m)
    if threads <= 1 or total < 10_000:
        return _enumerate_range(ctx.N, ctx.l, m, 0, total)
    step = -(-total // threads)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    merged: Counter = Counter()
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_enumerate_range, ctx.N, ctx.l, m, lo, hi) for lo, hi in bounds]
        for fut in futures:
            merged.update(fut.result())
    return dict(merged)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("ROOTSUM_THREADS", "1")))
    except ValueError:
        return 1


def pmf_X(
    ctx: CyclotomicContext,
    m: int,
    budget: int = DEFAULT_BUDGET,
    method: str = "classes",
    threads: int | None = None,
) -> ExactPMF:
    """Exact law of X_l(m, N).

    ``method="enumerate"`` walks every m-subset in colex order (split into
    contiguous rank ranges when ``threads > 1``).  The default
    ``method="classes"`` aggregates over exponent classes and gives the same
    counts far faster when gcd(N, l) > 1.
    """
    _check_m(ctx, m)
    total = math.comb(ctx.N, m)
    check_budget(total, budget)
    if method == "classes":
        raw = {key: c for (key, _), c in class_dp(ctx, exact_size=m).items()}
    elif method == "enumerate":
        raw = _enumerate_counts(ctx, m, default_threads() if threads is None else threads)
    else:
        raise UsageError(f"unknown method {method!r}")
    entries = {CycElem(ctx.d, key): c for key, c in raw.items()}
    return ExactPMF(ctx, m, entries, total)


# -- real and imaginary parts -----------------------------------------------


@dataclass
class ComponentPMF:
    """Law of U (kind real-part) or V (kind imag-part).

    Keys are kept inside the integer ring: z + conj(z) = 2U for the real part
    and z - conj(z) = 2jV for the imaginary part.
    """

    kind: str
    entries: dict[CycElem, int]
    denominator: int

    def value_of(self, key: CycElem) -> float:
        z = key.to_complex()
        return z.real / 2 if self.kind == REAL_PART else z.imag / 2

    @property
    def numeric_view(self) -> dict[CycElem, float]:
        return {k: self.value_of(k) for k in self.entries}

    def probability(self, key: CycElem) -> Fraction:
        return Fraction(self.entries.get(key, 0), self.denominator)

    def sorted_atoms(self) -> list[tuple[CycElem, int]]:
        return sorted(self.entries.items(), key=lambda kv: kv[0].coeffs)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "denominator": str(self.denominator),
            "atoms": [
                {"key": k.to_json(), "value": _fmt(self.value_of(k)), "count": str(c)}
                for k, c in self.sorted_atoms()
            ],
        }


def real_key(z: CycElem) -> CycElem:
    return z + z.conjugate()


def imag_key(z: CycElem) -> CycElem:
    return z - z.conjugate()


def pmf_components(pmf: ExactPMF) -> tuple[ComponentPMF, ComponentPMF, dict[tuple[CycElem, CycElem], int]]:
    U: Counter = Counter()
    V: Counter = Counter()
    joint: Counter = Counter()
    for z, c in pmf.entries.items():
        u, v = real_key(z), imag_key(z)
        U[u] += c
        V[v] += c
        joint[(u, v)] += c
    return (
        ComponentPMF(REAL_PART, dict(U), pmf.denominator),
        ComponentPMF(IMAG_PART, dict(V), pmf.denominator),
        dict(joint),
    )


def pmf_transform(pmf: ExactPMF, k: int) -> ExactPMF:
    """Law of X**k."""
    if k < 1:
        raise UsageError(f"power must be positive, got {k}")
    if k == 1:
        return ExactPMF(pmf.ctx, pmf.m, dict(pmf.entries), pmf.denominator)
    return pmf.pushforward(lambda z: z**k)


def abs_squared(pmf: ExactPMF) -> ExactPMF:
    """Law of |X|**2 = X * conj(X)."""
    return pmf.pushforward(lambda z: z * z.conjugate())


# -- uniformity --------------------------------------------------------------


@dataclass
class UniformityReport:
    N: int
    l: int
    m: int
    support_size: int
    binom: int
    is_uniform: bool
    collision_witnesses: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "l": self.l,
            "m": self.m,
            "support_size": str(self.support_size),
            "binom": str(self.binom),
            "is_uniform": self.is_uniform,
            "collision_witnesses": [[list(a), list(b)] for a, b in self.collision_witnesses],
        }


def uniformity_report(
    ctx: CyclotomicContext,
    m: int,
    budget: int = DEFAULT_BUDGET,
    max_witnesses: int = MAX_WITNESSES,
) -> UniformityReport:
    """Support size against C(N, m), with explicit colliding subset pairs.

    Witnesses pair each colliding subset with the first subset (in colex
    order) that produced the same sum.
    """
    _check_m(ctx, m)
    total = math.comb(ctx.N, m)
    check_budget(total, budget)
    vecs = ctx.root_vectors
    phi = ctx.phi_d
    first: dict[tuple[int, ...], tuple[int, ...]] = {}
    witnesses = []
    for subset in iter_colex(ctx.N, m):
        acc = [0] * phi
        for n in subset:
            for i, c in enumerate(vecs[n - 1]):
                acc[i] += c
        key = tuple(acc)
        seen = first.get(key)
        if seen is None:
            first[key] = subset
        elif len(witnesses) < max_witnesses:
            witnesses.append((seen, subset))
    support = len(first)
    return UniformityReport(ctx.N, ctx.l, m, support, total, support == total, witnesses)
