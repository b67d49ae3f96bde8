"""Coherence of partial Fourier matrices against the Welch bound.

Row indices are 0-based (matrix convention); column c of the m x N matrix
is (exp(-2 pi j r c / N) / sqrt(m)) over the selected rows r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distribution import _fmt
from .exceptions import UsageError

MAX_N = 4096
WELCH_TOL = 1e-12


def sigma_ratio(N: int, m: int) -> float:
    """sqrt(Var X_l(m, N)) / m with Var = m (N - m) / (N - 1)."""
    if N == 1:
        return 0.0
    return math.sqrt(m * (N - m) / (N - 1)) / m


def welch_bound(N: int, m: int) -> float:
    """sqrt((N - m) / (m (N - 1))), asserted equal to :func:`sigma_ratio`."""
    if N < 1 or not 1 <= m <= N:
        raise UsageError(f"need 1 <= m <= N, got N={N}, m={m}")
    bound = 0.0 if N == 1 else math.sqrt((N - m) / (m * (N - 1)))
    ratio = sigma_ratio(N, m)
    if abs(bound - ratio) > WELCH_TOL:
        raise ArithmeticError(f"Welch bound {bound!r} and sigma/m {ratio!r} disagree")
    return bound


@dataclass(frozen=True)
class CoherenceReport:
    N: int
    rows: tuple[int, ...]
    mu: float
    welch: float
    sigma_ratio: float
    satisfied: bool

    @property
    def m(self) -> int:
        return len(self.rows)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "m": self.m,
            "rows": list(self.rows),
            "mu": _fmt(self.mu),
            "welch": _fmt(self.welch),
            "sigma_ratio": _fmt(self.sigma_ratio),
            "approx_inverse_sqrt_m": _fmt(1 / math.sqrt(self.m)),
            "satisfied": self.satisfied,
        }


def partial_fourier_matrix(N: int, rows: Sequence[int]) -> np.ndarray:
    r = np.asarray(rows, dtype=np.int64)[:, None]
    c = np.arange(N, dtype=np.int64)[None, :]
    # reduce r*c mod N before scaling so large N keeps full phase precision
    return np.exp(-2j * np.pi * ((r * c) % N) / N) / math.sqrt(len(rows))


def gram_magnitudes(N: int, rows: Sequence[int]) -> np.ndarray:
    A = partial_fourier_matrix(N, rows)
    return np.abs(A.conj().T @ A)


def _validate_rows(N: int, rows: Sequence[int]) -> tuple[int, ...]:
    if N < 1 or N > MAX_N:
        raise UsageError(f"N must lie in [1, {MAX_N}], got {N}")
    rows = tuple(int(r) for r in rows)
    if not rows or len(rows) > N:
        raise UsageError(f"need 1 <= |rows| <= N, got {len(rows)}")
    if len(set(rows)) != len(rows):
        raise UsageError("rows must be distinct")
    bad = [r for r in rows if not 0 <= r <= N - 1]
    if bad:
        raise UsageError(f"rows out of range [0, {N - 1}]: {bad}")
    return tuple(sorted(rows))


def partial_fourier_coherence(N: int, rows: Sequence[int]) -> CoherenceReport:
    rows = _validate_rows(N, rows)
    m = len(rows)
    welch = welch_bound(N, m)
    if N == 1:
        mu = 0.0
    else:
        G = gram_magnitudes(N, rows)
        np.fill_diagonal(G, 0.0)
        mu = float(G.max())
    return CoherenceReport(N, rows, mu, welch, sigma_ratio(N, m), mu >= welch - WELCH_TOL)
