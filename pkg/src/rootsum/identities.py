"""Big-integer checks of binomial identities tied to the real-valued variance formulas.

Rational right-hand sides are cleared: an identity ``lhs == (a / b) * C``
is checked as ``lhs * b == a * C``, and ``b | a * C`` is asserted separately.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .exceptions import UsageError


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class IdentityCase:
    name: str
    params: tuple[int, ...]
    lhs: int  # left side times the cleared denominator
    rhs: int
    holds: bool
    divisible: bool = True
    raw_lhs: int | None = None
    denominator: int = 1

    def to_row(self) -> dict:
        return {
            "name": self.name,
            "params": " ".join(str(p) for p in self.params),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
        }


# each evaluator returns (lhs, rhs_numerator, rhs_denominator): identity is lhs == num/den
Evaluator = Callable[..., tuple[int, int, int]]


def _chu_vandermonde(l: int, m: int) -> tuple[int, int, int]:
    lhs = sum(binomial(l, k) * binomial(l, m - k) for k in range(0, min(m, l) + 1))
    return lhs, binomial(2 * l, m), 1


def _chu_vandermonde_central(m: int) -> tuple[int, int, int]:
    lhs = sum(binomial(m, k) ** 2 for k in range(m + 1))
    return lhs, binomial(2 * m, m), 1


def _identity_33(l: int, m: int) -> tuple[int, int, int]:
    # sum (2k-m)^2 C(l,k) C(l,m-k) = m(2l-m)/(2l-1) * C(2l,m)
    lhs = sum(
        (2 * k - m) ** 2 * binomial(l, k) * binomial(l, m - k)
        for k in range(max(0, m - l), min(m, l) + 1)
    )
    return lhs, m * (2 * l - m) * binomial(2 * l, m), 2 * l - 1


def _identity_3_3(m: int) -> tuple[int, int, int]:
    lhs = sum((2 * k - m) ** 2 * binomial(m, k) ** 2 for k in range(m + 1))
    return lhs, 2 * m * binomial(2 * m - 2, m - 1), 1


def _remark_a(l: int, m: int) -> tuple[int, int, int]:
    # sum (2m-3k)^2 C(l,m-k) C(2l,k) = 2m(3l-m)/(3l-1) * C(3l,m)
    lhs = sum(
        (2 * m - 3 * k) ** 2 * binomial(l, m - k) * binomial(2 * l, k)
        for k in range(max(0, m - l), min(m, 2 * l) + 1)
    )
    return lhs, 2 * m * (3 * l - m) * binomial(3 * l, m), 3 * l - 1


def _remark_b(m: int) -> tuple[int, int, int]:
    lhs = sum((2 * m - 3 * k) ** 2 * binomial(m, k) * binomial(2 * m, k) for k in range(m + 1))
    return lhs, 4 * m * m * binomial(3 * m, m), 3 * m - 1


def _remark_c(l: int, m: int) -> tuple[int, int, int]:
    # quadruple sum over m1+m2+m3+m4 = m; m4 is forced by the other three
    bl = [binomial(l, i) for i in range(l + 1)]
    b2l = [binomial(2 * l, i) for i in range(2 * l + 1)]
    lhs = 0
    for m1 in range(min(l, m) + 1):
        for m2 in range(min(l, m - m1) + 1):
            w12 = bl[m1] * bl[m2]
            for m3 in range(min(2 * l, m - m1 - m2) + 1):
                m4 = m - m1 - m2 - m3
                if m4 > 2 * l:
                    continue
                lhs += (2 * m1 - 2 * m2 + m3 - m4) ** 2 * w12 * b2l[m3] * b2l[m4]
    return lhs, 2 * m * (6 * l - m) * binomial(6 * l, m), 6 * l - 1


IDENTITIES: dict[str, Evaluator] = {
    "chu_vandermonde": _chu_vandermonde,
    "chu_vandermonde_central": _chu_vandermonde_central,
    "identity_33": _identity_33,
    "identity_3_3": _identity_3_3,
    "remark_3_4_a": _remark_a,
    "remark_3_4_b": _remark_b,
    "remark_3_4_c": _remark_c,
}

# parameter arity: 1 -> (m,), 2 -> (l, m)
ARITY = {name: fn.__code__.co_argcount for name, fn in IDENTITIES.items()}

# valid m for a given l, for the two-parameter identities
M_RANGE: dict[str, Callable[[int], range]] = {
    "chu_vandermonde": lambda l: range(1, 2 * l + 1),
    "identity_33": lambda l: range(1, 2 * l + 1),
    "remark_3_4_a": lambda l: range(1, 3 * l + 1),
    "remark_3_4_c": lambda l: range(1, 6 * l + 1),
}


def default_params(name: str, limit: int) -> list[tuple[int, ...]]:
    """All valid parameter tuples with the leading parameter in [1, limit]."""
    if name not in IDENTITIES:
        raise UsageError(f"unknown identity {name!r}; known: {sorted(IDENTITIES)}")
    if ARITY[name] == 1:
        return [(m,) for m in range(1, limit + 1)]
    return [(l, m) for l in range(1, limit + 1) for m in M_RANGE[name](l)]


def check_identity(name: str, params: Iterable[tuple[int, ...]]) -> list[IdentityCase]:
    try:
        fn = IDENTITIES[name]
    except KeyError:
        raise UsageError(f"unknown identity {name!r}; known: {sorted(IDENTITIES)}") from None
    out = []
    for p in params:
        p = tuple(p)
        if len(p) != ARITY[name] or any(x < 0 for x in p):
            raise UsageError(f"{name} takes {ARITY[name]} nonnegative parameter(s), got {p}")
        lhs, num, den = fn(*p)
        out.append(IdentityCase(name, p, lhs * den, num, lhs * den == num, num % den == 0, lhs, den))
    return out


def cases_to_csv(cases: Iterable[IdentityCase]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["name", "params", "lhs", "rhs", "holds"], lineterminator="\n")
    writer.writeheader()
    for c in cases:
        writer.writerow(c.to_row())
    return buf.getvalue()
