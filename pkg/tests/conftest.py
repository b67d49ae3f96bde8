import cmath
import itertools
import math
from fractions import Fraction

import pytest


def brute_law(N, l, m):
    """Float oracle: group m-subset sums by rounded complex value."""
    law = {}
    for sub in itertools.combinations(range(1, N + 1), m):
        z = sum(cmath.exp(-2j * math.pi * n * l / N) for n in sub) if sub else 0j
        key = (round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0)
        law[key] = law.get(key, 0) + 1
    return law


def float_law(pmf):
    out = {}
    for key, count in pmf.entries.items():
        z = key.to_complex()
        out[(round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0)] = count
    return out


def q(text):
    return Fraction(text)


@pytest.fixture
def brute():
    return brute_law
