from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from localfactors.exactalg import (
    DivisibilityError,
    ExactError,
    LaurentPoly,
    PoleError,
    QuadExt,
    RatFunc,
    exact_div,
    lp_arith,
    qpow,
    rf_eval,
    subst_affine_s,
)

T = LaurentPoly.var()


def x(a, b):
    return LaurentPoly.monomial((a, b))


small = st.integers(-3, 3)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polys(arity):
    exps = st.tuples(*[small] * arity)
    return st.dictionaries(exps, coeffs, max_size=4).map(lambda d: LaurentPoly(arity, d))


def nonzero(arity):
    return polys(arity).filter(lambda p: not p.is_zero())


class TestLaurentPoly:
    def test_difference_of_squares(self):
        assert (1 - T) * (1 + T) == 1 - T**2

    def test_cancellation_gives_empty_table(self):
        p = T**2 + (-(T**2))
        assert p.is_zero() and p.terms == {}

    def test_exponent_addition(self):
        assert x(1, 0) * x(0, 1) == x(1, 1)

    def test_arity_mismatch(self):
        with pytest.raises(ExactError):
            T + x(1, 0)

    def test_lp_arith_dispatch(self):
        assert lp_arith("mul", 1 - T, 1 + T) == 1 - T**2
        assert lp_arith("neg", T) == -T

    @given(polys(2), polys(2), polys(2))
    def test_ring_axioms(self, f, g, h):
        assert (f + g) * h == f * h + g * h
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f
        assert f - f == LaurentPoly(2)

    @given(polys(1))
    def test_json_roundtrip(self, f):
        assert LaurentPoly.from_json(f.to_json()) == f

    def test_json_roundtrip_quadratic(self):
        f = T * QuadExt.sqrt(3) + Fraction(1, 2)
        assert LaurentPoly.from_json(f.to_json()) == f


class TestExactDiv:
    def test_linear(self):
        assert exact_div(x(1, 0) - x(0, 1), 1 - x(-1, 1)) == x(1, 0)

    def test_quadratic(self):
        assert exact_div(x(2, 0) - x(0, 2), 1 - x(-1, 1)) == x(2, 0) + x(1, 1)

    def test_not_divisible(self):
        with pytest.raises(DivisibilityError):
            exact_div(1 - x(1, 0), 1 - x(0, 1))

    def test_zero_divisor(self):
        with pytest.raises((DivisibilityError, ZeroDivisionError)):
            exact_div(T, LaurentPoly(1))

    @settings(max_examples=500, deadline=None)
    @given(polys(2), nonzero(2))
    def test_product_divides(self, f, g):
        assert exact_div(f * g, g) == f

    @settings(max_examples=100, deadline=None)
    @given(polys(1), nonzero(1))
    def test_product_divides_univariate(self, f, g):
        assert exact_div(f * g, g) == f


class TestQuadExt:
    def test_sqrt_squares(self):
        r = QuadExt.sqrt(3)
        assert r * r == 3

    def test_square_radicand_folds(self):
        assert QuadExt.sqrt(9) == 3

    def test_inverse(self):
        z = QuadExt(1, 2, 5)
        assert z * z.inverse() == 1

    @pytest.mark.parametrize("q,e,want", [(9, Fraction(1, 2), 3), (4, Fraction(-3, 2), Fraction(1, 8)), (3, 2, 9)])
    def test_qpow_rational(self, q, e, want):
        assert qpow(q, e) == want

    def test_qpow_half(self):
        assert qpow(3, Fraction(1, 2)) == QuadExt.sqrt(3)

    @given(coeffs, coeffs, coeffs, coeffs)
    def test_field_axioms(self, a, b, c, d):
        u, v = QuadExt(a, b, 2), QuadExt(c, d, 2)
        assert u * v == v * u
        if v:
            assert (u / v) * v == u


class TestRatFunc:
    def test_normalized_cancels_common_factor(self):
        r = RatFunc((1 - T) * (1 + T), 1 - T)
        assert r == RatFunc(1 + T)
        assert r.den == 1

    @pytest.mark.parametrize(
        "F,t0,want",
        [
            (RatFunc(1 - T, 1 - T * Fraction(1, 3)), 0, 1),
            (RatFunc(1 - T, 1 - 9 * T), Fraction(1, 3), Fraction(-1, 3)),
        ],
    )
    def test_eval(self, F, t0, want):
        assert rf_eval(F, t0) == want

    def test_pole(self):
        with pytest.raises(PoleError) as info:
            rf_eval(RatFunc(LaurentPoly.const(1), 1 - T), 1)
        assert info.value.denominator is not None

    def test_subst_identity(self):
        F = RatFunc(T**2)
        assert subst_affine_s(F, 1, 0, 3) == F

    def test_subst_reflect(self):
        F = RatFunc(T**2)
        assert subst_affine_s(F, -1, 1, 3) == RatFunc(T**-2) * Fraction(1, 3)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_subst_l_factor(self, k):
        q = 2
        F = RatFunc(LaurentPoly.const(1), 1 - T ** (2 * k))
        want = RatFunc(LaurentPoly.const(1), 1 - T ** (-2 * k) * Fraction(1, q**k))
        assert subst_affine_s(F, -1, 1, q) == want

    @pytest.mark.parametrize("q", [4, 9])
    def test_half_shift_roundtrip(self, q):
        F = RatFunc(LaurentPoly.const(1), 1 - T**2)
        G = subst_affine_s(F, 1, Fraction(1, 2), q)
        assert G != F
        assert subst_affine_s(G, 1, Fraction(-1, 2), q) == F

    def test_bad_shift(self):
        with pytest.raises(ExactError):
            subst_affine_s(RatFunc(T), 1, Fraction(1, 3), 3)

    @given(polys(1), nonzero(1), nonzero(1))
    @settings(deadline=None)
    def test_field_ops(self, a, b, c):
        F, G = RatFunc(a, b), RatFunc(c)
        assert (F * G) / G == F
        assert (F + G) - G == F

    @given(polys(1), nonzero(1))
    @settings(deadline=None)
    def test_json_roundtrip(self, a, b):
        F = RatFunc(a, b)
        assert RatFunc.from_json(F.to_json()) == F
