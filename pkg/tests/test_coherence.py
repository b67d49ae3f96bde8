import math
import random

import pytest

from rootsum import UsageError, partial_fourier_coherence, welch_bound
from rootsum.coherence import sigma_ratio


def test_welch_examples():
    assert welch_bound(4, 2) == pytest.approx(math.sqrt(2 / 6), abs=1e-15)
    assert [welch_bound(N, 1) for N in (2, 7, 100)] == [1.0, 1.0, 1.0]
    assert abs(welch_bound(10**6, 100) - 1 / math.sqrt(100)) < 1e-4


def test_welch_is_sigma_over_m():
    rng = random.Random(0)
    for _ in range(200):
        N = rng.randint(2, 5000)
        m = rng.randint(1, N)
        assert abs(welch_bound(N, m) - sigma_ratio(N, m)) <= 1e-12


def test_full_dft_is_orthogonal():
    rep = partial_fourier_coherence(4, [0, 1, 2, 3])
    assert rep.mu < 1e-12 and rep.welch == 0 and rep.satisfied


def test_two_rows_of_four():
    rep = partial_fourier_coherence(4, [0, 1])
    # columns 0 and 1: |1 + e^{-j pi/2}| / 2
    assert rep.mu == pytest.approx(abs(1 + complex(0, -1)) / 2)
    assert rep.satisfied


def test_quadratic_residues_mod_7():
    rep = partial_fourier_coherence(7, [1, 2, 4])
    assert rep.satisfied
    assert rep.mu == pytest.approx(rep.welch, abs=1e-12)  # a difference set: the bound is met


@pytest.mark.parametrize("rows", [[], [0, 0], [4], list(range(5))])
def test_bad_rows(rows):
    with pytest.raises(UsageError):
        partial_fourier_coherence(4, rows)
