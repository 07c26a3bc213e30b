"""Period series coefficients and the contour-integral oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummer_pf.polynomials import MultiPoly
from kummer_pf.series import (
    TruncatedSeries,
    evaluate_series,
    period_coefficient,
    period_series,
    residue_oracle,
    series_arith,
)


class TestPeriodCoefficient:
    def test_normalization(self):
        assert period_coefficient((0, 0, 0)) == 1

    def test_first_p(self):
        # s=1: (1/16)*(2!)^2/(1!)^3 = 1/4
        assert period_coefficient((1, 0, 0)) == Fraction(1, 4)

    def test_first_q(self):
        # s=2: (1/256)*(4!)^2/(2!)^3 = 72/256 = 9/32
        assert period_coefficient((0, 1, 0)) == Fraction(9, 32)

    def test_first_r(self):
        # s=3: (1/4096)*(6!)^2/(3!)^3/2! = 75/256
        assert period_coefficient((0, 0, 1)) == Fraction(75, 256)

    def test_p_squared(self):
        # s=2 with 1/2! = 9/64
        assert period_coefficient((2, 0, 0)) == Fraction(9, 64)

    def test_positivity(self):
        for l in range(5):
            for m in range(4):
                for n in range(3):
                    assert period_coefficient((l, m, n)) > 0


class TestResidueOracle:
    def test_origin(self):
        assert residue_oracle((0, 0, 0)) == 1

    def test_first_p(self):
        assert residue_oracle((1, 0, 0)) == Fraction(1, 4)

    def test_oracle_equivalence_mixed(self):
        idx = (1, 1, 1)
        assert residue_oracle(idx) == period_coefficient(idx)

    def test_oracle_equivalence_through_degree_8(self):
        # the acceptance sweep; 165 index triples
        count = 0
        for l in range(9):
            for m in range(9 - l):
                for n in range(9 - l - m):
                    assert residue_oracle((l, m, n)) == period_coefficient((l, m, n)), (l, m, n)
                    count += 1
        assert count == 165


class TestPeriodSeries:
    def test_cap_zero(self):
        s = period_series(0)
        assert s.terms == {(0, 0, 0): Fraction(1)}

    def test_cap_one(self):
        # plain total degree: all three linear terms are present at cap 1
        s = period_series(1)
        assert s.terms == {
            (0, 0, 0): Fraction(1),
            (1, 0, 0): Fraction(1, 4),
            (0, 1, 0): Fraction(9, 32),
            (0, 0, 1): Fraction(75, 256),
        }

    def test_cap_two_spot_values(self):
        s = period_series(2)
        assert set(s.terms) == {
            (l, m, n)
            for l in range(3) for m in range(3) for n in range(3)
            if l + m + n <= 2
        }
        assert s.coefficient((1, 0, 0)) == Fraction(1, 4)
        assert s.coefficient((2, 0, 0)) == Fraction(9, 64)
        assert s.coefficient((0, 1, 0)) == Fraction(9, 32)


class TestSeriesArith:
    def test_add_zero(self):
        s = period_series(4)
        assert series_arith(s, TruncatedSeries.zero(4), "add") == s

    def test_monomial_shift(self):
        one = TruncatedSeries.one(3)
        shifted = series_arith(one, (1, 2, 0), "scale_by_monomial")
        assert shifted.terms == {(1, 2, 0): Fraction(1)}
        # cap too small: the shift truncates to zero
        assert TruncatedSeries.one(2).scale_by_monomial((1, 2, 0)).is_zero
        scaled = series_arith(one, ((1, 2, 0), Fraction(3, 4)), "scale_by_monomial")
        assert scaled.terms == {(1, 2, 0): Fraction(3, 4)}

    def test_product_truncation(self):
        cap = 2
        one_plus = TruncatedSeries(cap, {(0, 0, 0): 1, (1, 0, 0): 1})
        one_minus = TruncatedSeries(cap, {(0, 0, 0): 1, (1, 0, 0): -1})
        prod = series_arith(one_plus, one_minus, "mul")
        assert prod.terms == {(0, 0, 0): Fraction(1), (2, 0, 0): Fraction(-1)}

    def test_cap_mismatch_rejected(self):
        with pytest.raises(ValueError):
            series_arith(TruncatedSeries.one(2), TruncatedSeries.one(3), "add")

    @given(st.integers(2, 5))
    @settings(max_examples=10, deadline=None)
    def test_mul_agrees_with_untruncated(self, cap):
        a = TruncatedSeries(cap, {(1, 0, 0): 2, (0, 1, 0): -3})
        b = TruncatedSeries(cap, {(0, 0, 1): 1, (1, 0, 0): Fraction(1, 2)})
        prod = a * b
        pa = MultiPoly.from_terms(dict(a.terms))
        pb = MultiPoly.from_terms(dict(b.terms))
        full = pa * pb
        for exps, coeff in full.terms():
            if sum(exps) <= cap:
                assert prod.coefficient(exps) == coeff
            else:
                assert prod.coefficient(exps) == 0

    def test_multiply_poly(self):
        s = period_series(3)
        p2q = MultiPoly.from_terms({(2, 1, 0): 1})
        out = s.multiply_poly(p2q)
        assert out.coefficient((2, 1, 0)) == 1
        assert out.coefficient((3, 1, 0)) == 0  # beyond cap


class TestEvaluation:
    def test_constant(self):
        val, tail = evaluate_series(TruncatedSeries.one(4), (0.3, 0.1, 0.2))
        assert val == 1
        assert tail == 0

    def test_two_terms(self):
        s = TruncatedSeries(1, {(0, 0, 0): 1, (1, 0, 0): Fraction(1, 4)})
        val, tail = evaluate_series(s, (0.01, 0, 0))
        assert val == pytest.approx(1.0025)
        assert tail == pytest.approx(0.0025)

    def test_tail_below_tolerance_at_small_point(self):
        s = period_series(20)
        pt = (1e-2, 1e-2, 1e-2)
        val, tail = evaluate_series(s, pt)
        assert tail < 1e-20
        # compare against a higher cap: the tail proxy bounds the difference
        val24, _ = evaluate_series(period_series(24), pt)
        assert abs(val - val24) < 1e-20

    def test_tolerance_enforced(self):
        s = period_series(2)
        with pytest.raises(ValueError):
            evaluate_series(s, (0.9, 0.9, 0.9), tail_tol=1e-12)
