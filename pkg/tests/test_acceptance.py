"""Acceptance gate: one PASS/FAIL line per criterion, printed to the terminal.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear even without -s).
"""

import math
import random
import statistics
import time
from fractions import Fraction

import numpy as np
import pytest

from rootsum import (
    closed_form_check,
    component_moments,
    conjecture_scan,
    new_context,
    paper_square_expectation,
    partial_fourier_coherence,
    pmf_components,
    pmf_tilde,
    pmf_transform,
    pmf_X,
    sample_estimate,
    variance,
    welch_bound,
)
from rootsum.bernoulli import binomial_law
from rootsum.coherence import sigma_ratio
from rootsum.distribution import uniformity_report
from rootsum.identities import check_identity, default_params
from rootsum.moments import moment_sequence, second_moment_U, second_moment_V
from rootsum.montecarlo import sample_sums


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {detail}")
        assert ok, detail

    return emit


def law(pmf):
    return {tuple(k.coeffs): p for k, p in pmf.probabilities().items()}


def test_criterion_01_four_point_fixture(verdict):
    def fixture():
        pmf = pmf_X(new_context(4, 1), 2)
        return pmf, pmf_transform(pmf, 2), moment_sequence(pmf, 4), variance(pmf)

    fixture()
    times = []
    for _ in range(25):
        t = time.perf_counter()
        pmf, sq, moms, var = fixture()
        times.append(time.perf_counter() - t)
    sixth, third = Fraction(1, 6), Fraction(1, 3)
    ok_law = law(pmf) == {(0, 0): third, (1, 1): sixth, (1, -1): sixth, (-1, 1): sixth, (-1, -1): sixth}
    ok_sq = law(sq) == {(0, 0): third, (0, 2): third, (0, -2): third}
    vals = [r.value.as_fraction() for r in moms]
    # k = 4: brute force gives -8/3; the printed value is +8/3
    ok_mom = vals == [0, 0, 0, Fraction(-8, 3)]
    elapsed = statistics.median(times)
    ok = ok_law and ok_sq and ok_mom and var == Fraction(4, 3) and elapsed < 1e-3
    verdict(1, ok, f"law={ok_law} X^2 uniform={ok_sq} moments={[str(v) for v in vals]} Var={var} median {elapsed * 1e3:.3f} ms")


def test_criterion_02_component_fixture(verdict):
    pmf = pmf_X(new_context(6, 2), 1)
    U, V, _ = pmf_components(pmf)
    u = {U.value_of(k): U.probability(k) for k in U.entries}
    v = {round(V.value_of(k), 12): V.probability(k) for k in V.entries}
    half = round(math.sqrt(3) / 2, 12)
    ok_u = u == {1.0: Fraction(1, 3), -0.5: Fraction(2, 3)}
    ok_v = v == {0.0: Fraction(1, 3), half: Fraction(1, 3), -half: Fraction(1, 3)}
    sq = paper_square_expectation(pmf)
    verdict(2, ok_u and ok_v and sq.as_fraction() == 1, f"U={ok_u} V={ok_v} E[U^2]+E[V^2]-2jE[UV]={sq.as_fraction()}")


def test_criterion_03_mean_variance_sweep(verdict):
    start = time.perf_counter()
    cases, bad = 0, []
    for N in range(2, 13):
        for l in range(1, N):
            ctx = new_context(N, l)
            for m in range(1, N + 1):
                pmf = pmf_X(ctx, m)
                cases += 1
                closed = Fraction(m * (N - m), N - 1)
                ok = moment_sequence(pmf, 1)[0].value.as_fraction() == 0 and variance(pmf) == closed
                ok &= not component_moments(pmf, 1, 0) and not component_moments(pmf, 0, 1)
                if N != 2 * l:
                    ok &= second_moment_U(pmf) == closed / 2 == second_moment_V(pmf)
                if not ok:
                    bad.append((N, l, m))
    elapsed = time.perf_counter() - start
    verdict(3, not bad and elapsed < 60, f"{cases} cases, failures {bad[:5]}, {elapsed:.1f} s")


def test_criterion_04_moment_vanishing_and_realness(verdict):
    cases, bad = 0, []
    for N in range(1, 11):
        for l in range(N):
            ctx = new_context(N, l)
            for m in range(1, N + 1):
                for r in moment_sequence(pmf_X(ctx, m), 12):
                    cases += 1
                    if not r.is_real or (r.k % ctx.d and r.value):
                        bad.append((N, l, m, r.k))
    verdict(4, not bad, f"{cases} (N,l,m,k) moments, failures {bad[:5]}")


def test_criterion_05_symmetries(verdict):
    cases, bad = 0, []
    for N in range(1, 13):
        for l in range(N):
            ctx = new_context(N, l)
            full = ctx.subset_sum(range(1, N + 1))  # 0 for l >= 1, N for l = 0
            laws = {m: pmf_X(ctx, m) for m in range(1, N)}
            for m in range(1, N):
                cases += 1
                other = laws[N - m]
                # l = 0: the literal form fails (X_0(m) = m); the complement form S - X(N-m) holds
                ok = laws[m].entries == other.pushforward(lambda z: full - z).entries
                if l:
                    ok &= laws[m].entries == other.negated().entries
                _, V, _ = pmf_components(laws[m])
                ok &= all(V.entries.get(-k) == c for k, c in V.entries.items())
                ok &= all(not component_moments(laws[m], 0, b) for b in (1, 3, 5, 7, 9))
                if not ok:
                    bad.append((N, l, m))
    verdict(5, not bad, f"{cases} cases (antisymmetry for l >= 1, N - X_0(N-m) for l = 0), failures {bad[:5]}")


def test_criterion_06_uniformity(verdict):
    prime_bad = []
    for p in (2, 3, 5, 7, 11, 13):
        for l in range(1, p):
            for m in range(1, p + 1):
                u = uniformity_report(new_context(p, l), m)
                if u.support_size != math.comb(p, m):
                    prime_bad.append((p, l, m))
    wit_ok = True
    for (N, l, m), support in {(4, 1, 2): 5, (6, 1, 2): 13, (8, 1, 4): 41}.items():
        ctx = new_context(N, l)
        u = uniformity_report(ctx, m)
        wit_ok &= u.support_size == support and bool(u.collision_witnesses)
        for a, b in u.collision_witnesses:
            # collisions come from antipodal pairs: swapping one zero-sum pair for another
            diff_a, diff_b = sorted(set(a) - set(b)), sorted(set(b) - set(a))
            wit_ok &= ctx.subset_sum(a) == ctx.subset_sum(b)
            wit_ok &= not ctx.subset_sum(diff_a) and not ctx.subset_sum(diff_b)
    scan = conjecture_scan(13)
    ces = sorted({(c["N"], c["m"]) for c in scan.counterexamples})
    ok = not prime_bad and wit_ok and scan.passed
    verdict(6, ok, f"primes uniform={not prime_bad} witnesses={wit_ok} scan counterexamples "
                   f"{len(scan.counterexamples)} at (N,m) {ces} over {scan.header['m_range']}")


def test_criterion_07_identities(verdict):
    start = time.perf_counter()
    plan = {"identity_3_3": 200, "chu_vandermonde_central": 200, "identity_33": 60, "chu_vandermonde": 60,
            "remark_3_4_a": 60, "remark_3_4_b": 60, "remark_3_4_c": 12}
    total, bad = 0, []
    for name, limit in plan.items():
        cases = check_identity(name, default_params(name, limit))
        total += len(cases)
        bad += [(c.name, c.params) for c in cases if not (c.holds and c.divisible)]
    elapsed = time.perf_counter() - start
    verdict(7, not bad and elapsed < 120, f"{total} cases, failures {bad[:5]}, {elapsed:.1f} s")


def test_criterion_08_real_family(verdict):
    reps = [closed_form_check(l, m) for l in range(1, 9) for m in range(1, 2 * l + 1)]
    bad = [r.case for r in reps if not r.passed]
    verdict(8, not bad, f"{len(reps)} (l,m) cases with N = 2l, failures {bad[:5]}")


def test_criterion_09_bernoulli(verdict):
    bad = []
    for N in range(1, 17):
        for m in range(1, N + 1):
            got = {k[0]: p for k, p in law(pmf_tilde(new_context(N, 0), m)).items()}
            if got != {k: p for k, p in binomial_law(N, m).items() if p}:
                bad.append(("binomial", N, m))
    for N in range(1, 13):
        for l in range(N):
            ctx = new_context(N, l)
            for m in range(1, N + 1):
                if variance(pmf_tilde(ctx, m)) != Fraction(m * (N - m), N):
                    bad.append(("variance", N, l, m))
    verdict(9, not bad, f"binomial law N <= 16 and Var = m(N-m)/N for N <= 12, failures {bad[:5]}")


def test_criterion_10_monte_carlo(verdict):
    args = (100_000, 7, 1_000, 10_000, 42)
    start = time.perf_counter()
    est = sample_estimate(*args)
    elapsed = time.perf_counter() - start
    again = sample_estimate(*args)
    same_threads = np.array_equal(sample_sums(*args), sample_sums(*args, threads=4))
    ok = abs(est.z_score) <= 5 and est == again and same_threads and elapsed < 60
    verdict(10, ok, f"z={est.z_score:.3f} var_hat={est.var_hat:.3f} closed={est.closed_form_var:.3f} "
                    f"reproducible={est == again} thread-invariant={same_threads} {elapsed:.1f} s")


def test_criterion_11_coherence(verdict):
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(1000):
        N = rng.randint(2, 10**6)
        m = rng.randint(1, N)
        worst = max(worst, abs(welch_bound(N, m) - sigma_ratio(N, m)))
    gap = math.inf
    for _ in range(200):
        N = rng.randint(2, 128)
        rows = rng.sample(range(N), rng.randint(1, N))
        rep = partial_fourier_coherence(N, rows)
        gap = min(gap, rep.mu - rep.welch)
    ok = worst <= 1e-12 and gap >= -1e-12
    verdict(11, ok, f"max |welch - sigma/m| = {worst:.2e}; min (mu - welch) = {gap:.2e} over 200 instances")
