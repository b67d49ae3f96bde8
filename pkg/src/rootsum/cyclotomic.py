"""Exact arithmetic in the ring of integers of a cyclotomic field.

Every sum of N-th roots of unity lives in Z[zeta] with zeta = exp(-2*pi*j/d),
d = N / gcd(N, l).  Elements are stored as integer coefficient vectors over
the basis 1, zeta, ..., zeta**(phi(d) - 1), i.e. as residues modulo the
d-th cyclotomic polynomial.  Because that polynomial is the minimal
polynomial of zeta, two elements are equal as complex numbers exactly when
their coefficient vectors are equal, so elements can be hashed and used as
dictionary keys for exact probability tables.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .exceptions import ContextMismatchError, UsageError

__all__ = [
    "CycElem",
    "CycRat",
    "Classification",
    "CyclotomicContext",
    "cyclotomic_polynomial",
    "new_context",
]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _divmod_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Integer long division by a monic polynomial (constant term first)."""
    rem = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(rem) - 1 < dd:
        return [0], rem
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    return quot, rem[:dd] if dd else [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, constant term first.

    Built as (x**d - 1) divided by the product of all lower cyclotomic
    polynomials of divisors of d; each division is checked to be exact.
    """
    if d < 1:
        raise UsageError(f"cyclotomic order must be positive, got {d}")
    poly = [-1] + [0] * (d - 1) + [1]
    for e in _divisors(d)[:-1]:
        poly, rem = _divmod_monic(poly, cyclotomic_polynomial(e))
        if any(rem):
            raise ArithmeticError(f"Phi_{e} does not divide x^{d}-1 exactly")
    return tuple(poly)


class _Ring:
    """Precomputed reduction data for Z[zeta_d]."""

    def __init__(self, d: int) -> None:
        self.d = d
        self.min_poly = cyclotomic_polynomial(d)
        self.phi = len(self.min_poly) - 1
        self.zero = (0,) * self.phi
        # reduced image of zeta**e for every e in [0, d)
        self.powers = tuple(self.reduce_folded(self._monomial(e)) for e in range(d))

    def _monomial(self, e: int) -> list[int]:
        v = [0] * self.d
        v[e] = 1
        return v

    def reduce_folded(self, v: list[int]) -> tuple[int, ...]:
        # v has length d; long division against the monic minimal polynomial
        phi, mp = self.phi, self.min_poly
        v = list(v)
        for i in range(len(v) - 1, phi - 1, -1):
            c = v[i]
            if c:
                base = i - phi
                for j in range(phi):
                    v[base + j] -= c * mp[j]
                v[i] = 0
        return tuple(v[:phi])

    def reduce(self, poly: Iterable[int]) -> tuple[int, ...]:
        folded = [0] * self.d
        for i, c in enumerate(poly):
            if c:
                folded[i % self.d] += c
        return self.reduce_folded(folded)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        prod = [0] * max(1, 2 * self.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.reduce(prod)

    def conj(self, a: tuple[int, ...]) -> tuple[int, ...]:
        d = self.d
        folded = [0] * d
        for i, c in enumerate(a):
            if c:
                folded[(d - i) % d] += c
        return self.reduce_folded(folded)


@lru_cache(maxsize=None)
def _ring(d: int) -> _Ring:
    return _Ring(d)


class Classification(NamedTuple):
    is_real: bool
    is_rational: bool
    rational_value: Fraction | None


@dataclass(frozen=True)
class CycElem:
    """Canonical element of Z[zeta_d]; coefficient i multiplies zeta**i."""

    d: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_int(cls, d: int, value: int) -> CycElem:
        ring = _ring(d)
        return cls(d, (value,) + ring.zero[1:])

    @classmethod
    def zero(cls, d: int) -> CycElem:
        return cls(d, _ring(d).zero)

    @classmethod
    def one(cls, d: int) -> CycElem:
        return cls.from_int(d, 1)

    @classmethod
    def from_poly(cls, d: int, poly: Iterable[int]) -> CycElem:
        return cls(d, _ring(d).reduce(poly))

    def _check(self, other: CycElem) -> None:
        if other.d != self.d:
            raise ContextMismatchError(f"operands live in Z[zeta_{self.d}] and Z[zeta_{other.d}]")

    def _coerce(self, other: object) -> CycElem | None:
        if isinstance(other, CycElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return CycElem.from_int(self.d, other)
        return None

    def __add__(self, other: CycElem | int) -> CycElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.d, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycElem:
        return CycElem(self.d, tuple(-x for x in self.coeffs))

    def __sub__(self, other: CycElem | int) -> CycElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.d, tuple(x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other: int) -> CycElem:
        return -self + other

    def __mul__(self, other: CycElem | int) -> CycElem:
        if isinstance(other, int):
            return CycElem(self.d, tuple(other * x for x in self.coeffs))
        if not isinstance(other, CycElem):
            return NotImplemented
        self._check(other)
        return CycElem(self.d, _ring(self.d).mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycElem:
        if k < 0:
            raise ValueError("negative powers are not supported in the ring")
        ring = _ring(self.d)
        result, base = CycElem.one(self.d).coeffs, self.coeffs
        while k:
            if k & 1:
                result = ring.mul(result, base)
            k >>= 1
            if k:
                base = ring.mul(base, base)
        return CycElem(self.d, result)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def conjugate(self) -> CycElem:
        return CycElem(self.d, _ring(self.d).conj(self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def classify(self) -> Classification:
        rational = self.is_rational()
        return Classification(
            is_real=rational or self == self.conjugate(),
            is_rational=rational,
            rational_value=Fraction(self.coeffs[0]) if rational else None,
        )

    def to_complex(self) -> complex:
        d = self.d
        return sum(
            (c * cmath.exp(-2j * math.pi * i / d) for i, c in enumerate(self.coeffs) if c),
            0j,
        )

    def content(self) -> int:
        """gcd of all coefficients (0 for the zero element)."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"CycElem(d={self.d}, {list(self.coeffs)})"


def _rat_operand(d: int, other: object) -> CycRat | None:
    if isinstance(other, CycRat):
        return other
    if isinstance(other, CycElem):
        return CycRat(other, 1)
    if isinstance(other, int):
        return CycRat(CycElem.from_int(d, other), 1)
    if isinstance(other, Fraction):
        return CycRat.of(CycElem.from_int(d, other.numerator), other.denominator)
    return None


@dataclass(frozen=True)
class CycRat:
    """Element of the cyclotomic field as ``num / den`` in lowest terms.

    Build through :meth:`of`, which normalizes the sign of the denominator and
    divides out the common content.
    """

    num: CycElem
    den: int = 1

    @classmethod
    def of(cls, num: CycElem, den: int = 1) -> CycRat:
        if den == 0:
            raise ZeroDivisionError("CycRat with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content(), den)
        if g > 1:
            num = CycElem(num.d, tuple(c // g for c in num.coeffs))
            den //= g
        return cls(num, den)

    @classmethod
    def from_fraction(cls, d: int, value: Fraction | int) -> CycRat:
        value = Fraction(value)
        return cls.of(CycElem.from_int(d, value.numerator), value.denominator)

    @property
    def d(self) -> int:
        return self.num.d

    def __add__(self, other: object) -> CycRat:
        o = _rat_operand(self.d, other)
        if o is None:
            return NotImplemented
        return CycRat.of(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> CycRat:
        return CycRat(-self.num, self.den)

    def __sub__(self, other: object) -> CycRat:
        o = _rat_operand(self.d, other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CycRat:
        return (-self) + other

    def __mul__(self, other: object) -> CycRat:
        o = _rat_operand(self.d, other)
        if o is None:
            return NotImplemented
        return CycRat.of(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> CycRat:
        o = _rat_operand(self.d, other)
        if o is None:
            return NotImplemented
        if not o.num.is_rational():
            raise ValueError("division is only supported by rational elements")
        c = o.num.coeffs[0]
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return CycRat.of(self.num * o.den, self.den * c)

    def __bool__(self) -> bool:
        return bool(self.num)

    def conjugate(self) -> CycRat:
        return CycRat(self.num.conjugate(), self.den)

    def classify(self) -> Classification:
        c = self.num.classify()
        value = Fraction(self.num.coeffs[0], self.den) if c.is_rational else None
        return Classification(c.is_real, c.is_rational, value)

    def as_fraction(self) -> Fraction:
        if not self.num.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num.coeffs[0], self.den)

    def to_complex(self) -> complex:
        return self.num.to_complex() / self.den

    def to_json(self) -> dict:
        return {"coeffs": self.num.to_json(), "den": str(self.den)}

    def __repr__(self) -> str:
        return f"CycRat(d={self.d}, {list(self.num.coeffs)}/{self.den})"


@dataclass(frozen=True)
class CyclotomicContext:
    """The algebra attached to the multiset {w**n : n = 1..N}, w = exp(-2*pi*j*l/N)."""

    N: int
    l: int
    g: int = field(init=False)
    d: int = field(init=False)
    phi_d: int = field(init=False)
    min_poly: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or self.N < 1:
            raise UsageError(f"N must be a positive integer, got {self.N!r}")
        if not isinstance(self.l, int) or not 0 <= self.l <= self.N - 1:
            raise UsageError(f"l must lie in [0, {self.N - 1}], got {self.l!r}")
        g = math.gcd(self.N, self.l)  # gcd(N, 0) == N
        d = self.N // g
        ring = _ring(d)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "phi_d", ring.phi)
        object.__setattr__(self, "min_poly", ring.min_poly)

    def exponent_of(self, n: int) -> int:
        """Exponent e with w**n == zeta**e."""
        return (self.l * n % self.N) // self.g

    @cached_property
    def root_vectors(self) -> tuple[tuple[int, ...], ...]:
        """Reduced coefficient tuples of w**1, ..., w**N (index n-1)."""
        powers = _ring(self.d).powers
        return tuple(powers[self.exponent_of(n)] for n in range(1, self.N + 1))

    def root_power(self, n: int) -> CycElem:
        if not 1 <= n <= self.N:
            raise UsageError(f"root index n must lie in [1, {self.N}], got {n}")
        return CycElem(self.d, self.root_vectors[n - 1])

    def subset_sum(self, indices: Iterable[int]) -> CycElem:
        """Canonical value of sum(w**n for n in indices), indices 1-based."""
        acc = [0] * self.phi_d
        vecs = self.root_vectors
        for n in indices:
            for i, c in enumerate(vecs[n - 1]):
                acc[i] += c
        return CycElem(self.d, tuple(acc))

    def reduce(self, poly: Iterable[int]) -> CycElem:
        return CycElem(self.d, _ring(self.d).reduce(poly))

    def element(self, coeffs: Sequence[int]) -> CycElem:
        if len(coeffs) != self.phi_d:
            raise UsageError(f"expected {self.phi_d} coefficients, got {len(coeffs)}")
        return CycElem(self.d, tuple(int(c) for c in coeffs))

    def zero(self) -> CycElem:
        return CycElem.zero(self.d)

    def one(self) -> CycElem:
        return CycElem.one(self.d)

    def _own(self, *elems: CycElem) -> None:
        for e in elems:
            if e.d != self.d:
                raise ContextMismatchError(f"element of Z[zeta_{e.d}] used with context d={self.d}")

    def add(self, a: CycElem, b: CycElem) -> CycElem:
        self._own(a, b)
        return a + b

    def negate(self, a: CycElem) -> CycElem:
        self._own(a)
        return -a

    def multiply(self, a: CycElem, b: CycElem) -> CycElem:
        self._own(a, b)
        return a * b

    def conjugate(self, a: CycElem) -> CycElem:
        self._own(a)
        return a.conjugate()

    def classify(self, a: CycElem) -> Classification:
        self._own(a)
        return a.classify()

    def to_complex(self, a: CycElem) -> complex:
        self._own(a)
        return a.to_complex()


def new_context(N: int, l: int) -> CyclotomicContext:
    return CyclotomicContext(N, l)
