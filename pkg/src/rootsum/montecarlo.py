"""Sampling estimates of X_l(m, N) for N beyond exact enumeration.

Each trial t draws its own generator from ``SeedSequence(seed, spawn_key=(t,))``,
so the estimate for a fixed (seed, trials) does not depend on how trials
are split across workers.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import new_context
from .distribution import DEFAULT_BUDGET, _fmt, pmf_X
from .exceptions import UsageError

RNG_NAME = "numpy.PCG64 via SeedSequence(seed, spawn_key=(trial,))"

# subset sampler switches from rejection to partial shuffle above m > N / 64
SHUFFLE_RATIO = 64

SIGMA_BAND = 5.0


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def sample_subset(rng: np.random.Generator, N: int, m: int) -> np.ndarray:
    """Uniform m-subset of {0, ..., N-1} (unsorted)."""
    if m * SHUFFLE_RATIO <= N:
        # rejection: redraw until m distinct indices collected
        chosen = np.unique(rng.integers(0, N, size=m))
        while chosen.size < m:
            extra = rng.integers(0, N, size=m - chosen.size)
            chosen = np.unique(np.concatenate([chosen, extra]))
        return chosen
    # sparse partial Fisher-Yates: only displaced positions are stored
    swaps = rng.integers(np.arange(m), N)
    displaced: dict[int, int] = {}
    out = np.empty(m, dtype=np.int64)
    for i, j in enumerate(swaps.tolist()):
        vi = displaced.get(i, i)
        vj = displaced.get(j, j)
        out[i] = vj
        displaced[j] = vi
    return out


def _check(N: int, l: int, m: int, trials: int) -> None:
    if N < 1 or not 0 <= l <= N - 1:
        raise UsageError(f"need N >= 1 and 0 <= l <= N-1, got N={N}, l={l}")
    if not 1 <= m <= N:
        raise UsageError(f"m must lie in [1, {N}], got {m}")
    if trials < 1:
        raise UsageError("trials must be >= 1")


def sample_sums(N: int, l: int, m: int, trials: int, seed: int, threads: int = 1) -> np.ndarray:
    """Complex values of X_l(m, N) for trials 0..trials-1."""
    _check(N, l, m, trials)
    g = math.gcd(N, l)
    d = N // g
    roots = np.exp(-2j * np.pi * np.arange(d) / d)
    roots[0] = 1.0
    step = l // g

    def run(lo: int, hi: int) -> np.ndarray:
        vals = np.empty(hi - lo, dtype=np.complex128)
        for t in range(lo, hi):
            idx = sample_subset(trial_rng(seed, t), N, m) + 1
            exps = (idx * step) % d
            vals[t - lo] = roots[np.sort(exps)].sum()
        return vals

    if threads <= 1:
        return run(0, trials)
    chunk = -(-trials // threads)
    bounds = [(lo, min(trials, lo + chunk)) for lo in range(0, trials, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda b: run(*b), bounds))
    return np.concatenate(parts)


@dataclass(frozen=True)
class SampleEstimate:
    N: int
    l: int
    m: int
    trials: int
    seed: int
    mean_hat: complex
    var_hat: float
    stderr_var: float
    closed_form_var: float
    z_score: float
    rng: str = RNG_NAME

    @property
    def mean_band(self) -> float:
        return SIGMA_BAND * math.sqrt(self.closed_form_var / self.trials)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["mean_hat"] = [_fmt(self.mean_hat.real), _fmt(self.mean_hat.imag)]
        for key in ("var_hat", "stderr_var", "closed_form_var", "z_score"):
            out[key] = _fmt(out[key]) if math.isfinite(out[key]) else str(out[key])
        out["seed"] = str(self.seed)
        out["sigma_band"] = SIGMA_BAND
        return out


def sample_estimate(N: int, l: int, m: int, trials: int, seed: int, threads: int = 1) -> SampleEstimate:
    """Empirical mean and variance of X_l(m, N) with a z-score against m(N-m)/(N-1)."""
    x = sample_sums(N, l, m, trials, seed, threads)
    mean = complex(x.mean())
    dev = np.abs(x - mean) ** 2
    var_hat = float(dev.sum() / (trials - 1)) if trials > 1 else 0.0
    stderr = float(dev.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    closed = m * (N - m) / (N - 1) if l and N > 1 else 0.0
    if stderr > 0:
        z = (var_hat - closed) / stderr
    else:
        z = 0.0 if var_hat == closed else math.inf
    return SampleEstimate(N, l, m, trials, seed, mean, var_hat, stderr, closed, z)


@dataclass
class CrossCheck:
    N: int
    l: int
    m: int
    trials: int
    seed: int
    atoms: list[dict]
    passed: bool

    def to_dict(self) -> dict:
        return {"N": self.N, "l": self.l, "m": self.m, "trials": self.trials, "seed": str(self.seed),
                "rng": RNG_NAME, "passed": self.passed, "atoms": self.atoms}


def cross_check(N: int, l: int, m: int, trials: int, seed: int, budget: int = DEFAULT_BUDGET) -> CrossCheck:
    """Empirical atom frequencies against exact probabilities, 5-sigma per atom."""
    _check(N, l, m, trials)
    ctx = new_context(N, l)
    pmf = pmf_X(ctx, m, budget=budget)
    seen: Counter = Counter()
    for t in range(trials):
        subset = sample_subset(trial_rng(seed, t), N, m) + 1
        seen[ctx.subset_sum(subset.tolist())] += 1
    atoms, ok = [], True
    for key, count in pmf.sorted_atoms():
        p = Fraction(count, pmf.denominator)
        freq = seen.get(key, 0) / trials
        band = SIGMA_BAND * math.sqrt(float(p * (1 - p)) / trials)
        err = abs(freq - float(p))
        within = err < band or (band == 0 and err == 0)
        ok &= within
        atoms.append({"coeffs": key.to_json(), "p": f"{p.numerator}/{p.denominator}",
                      "freq": _fmt(freq), "band": _fmt(band), "within": within})
    stray = set(seen) - set(pmf.entries)
    if stray:
        ok = False
    return CrossCheck(N, l, m, trials, seed, atoms, ok)
