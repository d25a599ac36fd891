"""Truncated series and rational parsing."""
# this_file: tests/test_exact_series.py

import random
from fractions import Fraction

import pytest

from fanobound.errors import NonInvertibleError, ParseError, UsageError
from fanobound.exact import TruncSeries, format_rational, series_inv, series_mul, series_prod, to_rational


class TestToRational:
    """Only exact literals are accepted."""

    def test_to_rational_when_fraction_string_then_parses(self):
        assert to_rational("3/4") == Fraction(3, 4)
        assert to_rational(" -7 ") == Fraction(-7)

    @pytest.mark.parametrize("value", [0.5, "0.5", "1e3", True])
    def test_to_rational_when_inexact_then_refuses(self, value):
        with pytest.raises(ParseError):
            to_rational(value)

    def test_to_rational_when_zero_denominator_then_errors(self):
        with pytest.raises(ParseError, match="invalid rational"):
            to_rational("1/0")

    def test_format_rational_when_integral_then_no_denominator(self):
        assert format_rational(Fraction(10, 1)) == "10"
        assert format_rational(Fraction(-32, 3)) == "-32/3"


class TestTruncSeries:
    """Arithmetic modulo h^(order+1)."""

    def test_from_coeffs_when_too_long_then_truncates(self):
        s = TruncSeries.from_coeffs([1, 2, 3, 4], 1)
        assert s.coeffs == (1, 2)

    def test_from_coeffs_when_short_then_pads(self):
        assert TruncSeries.from_coeffs([5], 2).coeffs == (5, 0, 0)

    def test_constructor_when_wrong_length_then_errors(self):
        with pytest.raises(UsageError):
            TruncSeries(2, (1, 2))

    def test_series_mul_when_conjugate_linears_then_difference_of_squares(self):
        product = series_mul(TruncSeries.linear(1, 2), TruncSeries.linear(-1, 2))
        assert product.coeffs == (1, 0, -1)

    def test_series_mul_when_orders_differ_then_errors(self):
        with pytest.raises(UsageError):
            series_mul(TruncSeries.one(2), TruncSeries.one(3))

    def test_series_inv_when_geometric_then_alternating(self):
        assert series_inv(TruncSeries.linear(1, 3)).coeffs == (1, -1, 1, -1)

    def test_series_inv_when_zero_constant_then_errors(self):
        with pytest.raises(NonInvertibleError):
            series_inv(TruncSeries.from_coeffs([0, 1], 2))

    def test_series_inv_when_random_then_product_is_one(self):
        rng = random.Random(1729)
        for _ in range(25):
            order = rng.randint(0, 8)
            coeffs = [Fraction(rng.randint(1, 9), rng.randint(1, 5))]
            coeffs += [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order)]
            s = TruncSeries(order, tuple(coeffs))
            assert s * series_inv(s) == TruncSeries.one(order)

    def test_series_prod_when_repeated_factor_then_binomial(self):
        fifth = series_prod([TruncSeries.linear(-1, 3)] * 5, 3)
        assert fifth.coeffs == (1, -5, 10, -10)

    def test_mul_when_scalar_string_then_scales(self):
        assert (TruncSeries.linear(2, 1) * "1/2").coeffs == (Fraction(1, 2), 1)

    def test_str_when_mixed_signs_then_reads_as_polynomial(self):
        s = TruncSeries.from_coeffs([1, -2, 4, 2], 3)
        assert str(s) == "1 - 2h + 4h^2 + 2h^3"
        assert s.top == 2

    def test_str_when_zero_then_zero(self):
        assert str(TruncSeries.from_coeffs([], 2)) == "0"


def random_series(rng, order, unit=False):
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(order + 1)]
    if unit and coeffs[0] == 0:
        coeffs[0] = Fraction(rng.choice([-3, -1, 1, 2]), rng.randint(1, 4))
    return TruncSeries(order, tuple(coeffs))


class TestSeriesRingLaws:
    """Multiplication mod h^(order+1) is a commutative ring, units invert."""

    ORDERS = range(0, 12)

    def test_series_mul_when_random_then_associative(self):
        rng = random.Random(2024)
        for order in self.ORDERS:
            for _ in range(4):
                a, b, c = (random_series(rng, order) for _ in range(3))
                assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))

    def test_series_mul_when_random_then_commutative(self):
        rng = random.Random(31)
        for order in self.ORDERS:
            for _ in range(4):
                a, b = random_series(rng, order), random_series(rng, order)
                assert series_mul(a, b) == series_mul(b, a)

    def test_series_mul_when_random_then_distributes_over_add(self):
        rng = random.Random(577)
        for order in self.ORDERS:
            for _ in range(4):
                a, b, c = (random_series(rng, order) for _ in range(3))
                assert series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c)

    def test_series_inv_when_random_unit_then_two_sided_inverse(self):
        rng = random.Random(8128)
        for order in self.ORDERS:
            for _ in range(4):
                s = random_series(rng, order, unit=True)
                inverse = series_inv(s)
                assert series_mul(s, inverse) == TruncSeries.one(order)
                assert series_mul(inverse, s) == TruncSeries.one(order)

    def test_series_mul_when_length_one_then_scalar_product(self):
        a = TruncSeries.from_coeffs(["2/3"], 0)
        b = TruncSeries.from_coeffs(["-9/4"], 0)
        assert series_mul(a, b).coeffs == (Fraction(-3, 2),)
        assert series_inv(b).coeffs == (Fraction(-4, 9),)
