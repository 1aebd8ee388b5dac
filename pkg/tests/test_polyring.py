import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finmorph.expr import parse_polynomial as P
from finmorph.polyring import (
    NEG_INFINITY,
    ArityMismatch,
    IndexOutOfRange,
    Polynomial,
    Ring,
    TargetTooSmall,
    arith,
    dehomogenize_chart,
    evaluate,
    grading_check,
    homogenize,
    is_homogeneous,
)

XY = Ring(("x", "y"))
T = Ring(("t",))


def polys(nvars=2, max_exp=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(nvars, d))


def homogeneous_polys(nvars=2, degree=3):
    mons = [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) == degree]
    coeffs = st.lists(st.integers(-4, 4), min_size=len(mons), max_size=len(mons))
    return coeffs.map(lambda cs: Polynomial(nvars, dict(zip(mons, cs))))


def test_difference_of_squares():
    assert P("x+y", XY) * P("x-y", XY) == P("x^2-y^2", XY)


def test_additive_identity():
    p = P("3*x^2 - 1/2*y", XY)
    assert p + Polynomial.zero(2) == p
    assert arith(p, Polynomial.zero(2), "add") == p


def test_cube_against_repeated_multiplication():
    s = P("x+y", XY)
    by_hand = s * s * s
    # binomial oracle
    expected = Polynomial(2, {(3 - k, k): math.comb(3, k) for k in range(4)})
    assert by_hand == expected
    assert s**3 == expected
    assert arith(s, 3, "pow") == expected


def test_arith_kinds():
    p, q = P("x", XY), P("y", XY)
    assert arith(p, q, "sub") == P("x - y", XY)
    assert arith(p, q, "mul") == P("x*y", XY)
    assert arith(p, Fraction(1, 2), "scale") == P("1/2*x", XY)
    with pytest.raises(ValueError):
        arith(p, q, "div")
    with pytest.raises(ValueError):
        p ** -1


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        P("x", XY) + P("t", T)
    with pytest.raises(ArityMismatch):
        evaluate(P("x", XY), [1])


def test_zero_coefficients_are_not_stored():
    p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert dict(p.terms) == {(1, 0): 1}
    assert (P("x", XY) - P("x", XY)).is_zero()


def test_is_homogeneous():
    assert is_homogeneous(P("x^2 + x*y", XY)) == 2
    assert is_homogeneous(P("x^2 + y", XY)) is None
    assert is_homogeneous(Polynomial.zero(2)) == NEG_INFINITY


def test_zero_degree_is_below_every_integer():
    d = Polynomial.zero(2).degree()
    assert d == NEG_INFINITY
    assert d < -10**9 and d != -1


@pytest.mark.parametrize(
    "text, k, expected",
    [("x^2 + x*y", 1, "1 + t"), ("x^3", 1, "1"), ("x + y", 2, "t + 1")],
)
def test_dehomogenize_chart(text, k, expected):
    p = P(text, XY)
    q = dehomogenize_chart(p, k)
    assert q == P(expected, T)
    assert homogenize(q, k, is_homogeneous(p)) == p


def test_dehomogenize_bad_index():
    with pytest.raises(IndexOutOfRange):
        dehomogenize_chart(P("x", XY), 3)


def test_homogenize_examples():
    q = P("1/2 - 1/2*t", T)  # (1 - t)/2
    assert homogenize(q, 1, 1) * P("x", XY) == P("1/2*x^2 - 1/2*x*y", XY)
    assert homogenize(q, 1, 2) == P("1/2*x^2 - 1/2*x*y", XY)
    assert homogenize(P("1", T), 1, 3) == P("x^3", XY)
    assert homogenize(P("t^2", T), 2, 2) == P("x^2", XY)
    with pytest.raises(TargetTooSmall):
        homogenize(P("t^2", T), 1, 1)


def test_grading_check_examples():
    assert grading_check(P("x^2 + x*y", XY), 2)
    assert not grading_check(P("x^2 + y", XY), 2)
    abc = Ring(("a", "b", "c"))
    assert grading_check(P("-a^2 - b*c", abc), 2)
    assert not grading_check(P("-a^2 - b*c", abc), 3)


def test_evaluate_examples():
    assert evaluate(P("x^2 + y^2", XY), [1, 1]) == 2
    assert evaluate(P("x + y", XY), [3, -2]) == 1
    certificate_sum = P("1/2*x*(x - y)*(x + y) + 1/2*x*(x^2 + y^2)", XY)
    assert evaluate(certificate_sum, [2, 5]) == 8
    assert certificate_sum == P("x^3", XY)


def test_compose_and_embed():
    p = P("x*y + 1", XY)
    assert p.compose([P("t", T), P("t^2", T)]) == P("t^3 + 1", T)
    assert p.embed(3, [2, 0]) == Polynomial(3, {(1, 0, 1): 1, (0, 0, 0): 1})


# -- properties ------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Polynomial.zero(2)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_chart_identity(d, data):
    # p(X) == X_k^d * p^k(X_j / X_k), checked after clearing X_k
    p = data.draw(homogeneous_polys(2, d))
    for k in (1, 2):
        q = dehomogenize_chart(p, k)
        back = homogenize(q, k, d) if not q.is_zero() else Polynomial.zero(2)
        assert back == p


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_chart_identity_three_vars(d, data):
    p = data.draw(homogeneous_polys(3, d))
    for k in (1, 2, 3):
        q = dehomogenize_chart(p, k)
        assert (homogenize(q, k, d) if q else Polynomial.zero(3)) == p


@settings(max_examples=80, deadline=None)
@given(polys(max_exp=2), st.integers(0, 4))
def test_grading_check_matches_is_homogeneous(p, d):
    if p.is_zero():
        assert is_homogeneous(p) == NEG_INFINITY
        return
    assert grading_check(p, d) == (is_homogeneous(p) == d)


def _naive(a, b):
    g = math.gcd(a, b)
    if b < 0:
        a, b = -a, -b
    return a // g, b // g


def test_scalar_arithmetic_matches_naive_fractions():
    rng = random.Random(1234)
    for _ in range(10_000):
        an, ad = rng.randint(-10**12, 10**12), rng.randint(1, 10**9)
        bn, bd = rng.randint(-10**12, 10**12), rng.randint(1, 10**9)
        a, b = Fraction(an, ad), Fraction(bn, bd)
        got = [a + b, a - b, a * b]
        want = [_naive(an * bd + bn * ad, ad * bd), _naive(an * bd - bn * ad, ad * bd), _naive(an * bn, ad * bd)]
        if bn:
            got.append(a / b)
            want.append(_naive(an * bd, ad * bn))
        for g, (num, den) in zip(got, want):
            assert (g.numerator, g.denominator) == (num, den)
            assert g.denominator > 0


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(())
    with pytest.raises(ValueError):
        Ring(("2x",))
    assert Ring(("x", "y", "z")).chart_names(2) == ("t_x", "t_z")
