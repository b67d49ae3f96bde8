import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootsum import ContextMismatchError, CycElem, CycRat, UsageError, cyclotomic_polynomial, new_context


@pytest.mark.parametrize(
    "N, l, d, phi, poly",
    [
        (4, 1, 4, 2, (1, 0, 1)),
        (6, 2, 3, 2, (1, 1, 1)),
        (5, 0, 1, 1, (-1, 1)),
    ],
)
def test_context_fields(N, l, d, phi, poly):
    ctx = new_context(N, l)
    assert (ctx.d, ctx.phi_d, ctx.g) == (d, phi, N // d)
    assert tuple(ctx.min_poly) == poly


def test_cyclotomic_105_has_coefficient_minus_two():
    p = cyclotomic_polynomial(105)
    assert len(p) - 1 == 48
    assert min(p) == -2 and p[7] == -2


@pytest.mark.parametrize("d", range(1, 40))
def test_min_poly_divides_x_d_minus_one(d):
    p = list(cyclotomic_polynomial(d))
    assert p[-1] == 1
    rem = [-1] + [0] * (d - 1) + [1]
    for i in range(len(rem) - len(p), -1, -1):
        c = rem[i + len(p) - 1]
        for j, a in enumerate(p):
            rem[i + j] -= c * a
    assert not any(rem)


@pytest.mark.parametrize("N, l", [(12, 4), (9, 3), (10, 0), (7, 2)])
def test_exponent_classes_each_hit_g_times(N, l):
    ctx = new_context(N, l)
    counts = [0] * ctx.d
    for n in range(1, N + 1):
        counts[ctx.exponent_of(n)] += 1
    assert counts == [ctx.g] * ctx.d


def test_root_power_examples():
    assert new_context(4, 1).root_power(2).to_json() == [-1, 0]
    assert new_context(6, 2).root_power(1).to_json() == [0, 1]
    for N, l in [(7, 3), (12, 5), (9, 6)]:
        ctx = new_context(N, l)
        assert ctx.root_power(N) == ctx.one()


def test_reduce_examples():
    ctx = new_context(4, 1)
    assert not ctx.reduce([1, 1, 1, 1])
    assert ctx.reduce([0, 0, 0, 0, 0, 1]).to_json() == [0, 1]
    assert not new_context(6, 2).reduce([2, 2, 2])


def test_ring_operation_examples():
    ctx = new_context(4, 1)
    a, b = ctx.element([1, 1]), ctx.element([1, -1])
    assert ctx.multiply(a, b).to_json() == [2, 0]
    assert not ctx.add(a, ctx.negate(a))
    assert ctx.multiply(a, ctx.one()) == a
    assert ctx.conjugate(ctx.element([0, 1])).to_json() == [0, -1]


def test_classify_examples():
    c = new_context(4, 1).classify(new_context(4, 1).element([0, 1]))
    assert not c.is_real
    five = new_context(7, 1).element([5, 0, 0, 0, 0, 0])
    assert five.classify() == (True, True, 5)
    ctx = new_context(5, 1)
    z = ctx.add(ctx.root_power(1), ctx.root_power(4))
    cl = ctx.classify(z)
    assert cl.is_real and not cl.is_rational and cl.rational_value is None


def test_to_complex_examples():
    assert abs(new_context(4, 1).element([0, 1]).to_complex() - (-1j)) < 1e-15
    z = new_context(6, 2).element([0, 1]).to_complex()
    assert abs(z - complex(-0.5, -0.8660254037844386)) < 1e-15
    assert new_context(9, 2).element([3] + [0] * 5).to_complex() == 3


def test_mismatched_contexts_raise():
    with pytest.raises(ContextMismatchError):
        new_context(4, 1).one() + new_context(6, 2).one()
    with pytest.raises(ContextMismatchError):
        new_context(4, 1).add(new_context(6, 2).one(), new_context(6, 2).one())


@pytest.mark.parametrize("N, l", [(0, 0), (4, 4), (4, -1)])
def test_bad_context_is_usage_error(N, l):
    with pytest.raises(UsageError):
        new_context(N, l)


def test_cycrat_normalizes():
    ctx = new_context(4, 1)
    r = CycRat.of(ctx.element([2, 4]), -6)
    assert r.den == 3 and r.num.to_json() == [-1, -2]
    assert r.to_json() == {"coeffs": [-1, -2], "den": "3"}
    assert CycRat.of(ctx.zero(), 7).den == 1


# -- properties ---------------------------------------------------------------

contexts = st.integers(1, 14).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N - 1)))


@st.composite
def elems(draw, n=3):
    N, l = draw(contexts)
    ctx = new_context(N, l)
    coeff = st.lists(st.integers(-9, 9), min_size=ctx.phi_d, max_size=ctx.phi_d)
    return ctx, [ctx.element(draw(coeff)) for _ in range(n)]


@given(elems())
@settings(max_examples=200, deadline=None)
def test_ring_axioms(case):
    ctx, (a, b, c) = case
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert a.conjugate().conjugate() == a


@given(elems(n=2))
@settings(max_examples=200, deadline=None)
def test_canonical_equality_matches_complex_value(case):
    ctx, (a, b) = case
    za, zb = a.to_complex(), b.to_complex()
    assert abs((a * b).to_complex() - za * zb) < 1e-6
    assert (a == b) == (abs(za - zb) < 1e-9)


@given(st.integers(1, 10).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N - 1))),
       st.lists(st.integers(0, 40), max_size=30))
@settings(max_examples=200, deadline=None)
def test_reduce_preserves_value(Nl, poly):
    N, l = Nl
    ctx = new_context(N, l)
    zeta = cmath.exp(-2j * math.pi / ctx.d)
    expected = sum(c * zeta**i for i, c in enumerate(poly))
    assert abs(ctx.reduce(poly).to_complex() - expected) < 1e-6


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_distinct_roots_are_distinct_for_primes(p):
    for l in range(1, p):
        ctx = new_context(p, l)
        assert len({ctx.root_power(n) for n in range(1, p + 1)}) == p


def test_powers_and_integer_mixing():
    ctx = new_context(8, 1)
    z = ctx.root_power(1)
    assert z**8 == ctx.one()
    assert z**4 == -ctx.one()
    assert 2 * z - z == z
    assert CycElem.from_int(8, 0) == ctx.zero()
