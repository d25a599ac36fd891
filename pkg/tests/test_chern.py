"""Chern engine: series, residue closed form and positivity."""
# this_file: tests/test_chern.py

from fractions import Fraction

import pytest

from fanobound.chern import (
    GlobalGeneration,
    WeightedHypersurface,
    chern_numbers,
    euler_characteristic,
    g_value,
    gg_classify,
    hyperplane_power,
    paper_mode_hypersurfaces,
    residue_sum_check,
    top_chern_residue,
    total_chern_series,
    twisted_chern_report,
    validate,
    variety_invariants,
    whitney_twist_coefficient,
    wps_positivity,
)
from fanobound.errors import FormulaInapplicableError, HypothesisError, UsageError


class TestWeightedHypersurface:
    """Construction and derived properties."""

    def test_constructor_when_unsorted_then_sorts_descending(self):
        X = WeightedHypersurface((1, 3, 1, 2, 1), 6)
        assert X.weights == (3, 2, 1, 1, 1)
        assert (X.a0, X.a1, X.dimension) == (3, 2, 3)
        assert X.label == "X_6 in P(3,2,1,1,1)"

    def test_parse_when_comma_list_then_matches(self, sextic3fold):
        assert WeightedHypersurface.parse("3, 2,1,1,1", 6) == sextic3fold

    def test_parse_when_garbage_then_errors(self):
        with pytest.raises(UsageError, match="invalid weight list"):
            WeightedHypersurface.parse("3,x,1", 6)

    @pytest.mark.parametrize("weights,degree", [((1,), 2), ((1, 0, 1), 2), ((1, 1, 1), 0)])
    def test_constructor_when_invalid_then_errors(self, weights, degree):
        with pytest.raises(UsageError):
            WeightedHypersurface(weights, degree)

    def test_is_well_formed_when_shared_factor_then_false(self):
        assert not WeightedHypersurface((2, 2, 2, 1), 6).is_well_formed
        assert WeightedHypersurface((2, 2, 1, 1, 1), 4).is_well_formed

    def test_is_paper_mode_when_coprime_head_then_true(self, sextic3fold):
        assert sextic3fold.is_paper_mode
        assert not WeightedHypersurface((2, 2, 1, 1, 1), 4).is_paper_mode
        assert not WeightedHypersurface((3, 2, 2, 1, 1), 6).is_paper_mode


class TestValidate:
    def test_validate_when_strict_and_not_coprime_then_lists_problem(self):
        report = validate(WeightedHypersurface((2, 2, 1, 1, 1), 4), strict_paper_mode=True, for_positivity=True)
        assert not report.ok
        assert any("not coprime" in p for p in report.problems)
        assert any("a_0 + a_1 + 1" in p for p in report.problems)

    def test_validate_when_lenient_then_only_structural_problems(self):
        report = validate(WeightedHypersurface((2, 2, 1, 1, 1), 4))
        assert report.ok
        assert not report.paper_mode


class TestTotalChernSeries:
    """Expansion of prod(1+(a-a_i)h) / ((1+(a-d)h)(1+ah))."""

    def test_total_chern_series_when_untwisted_cubic_then_known_classes(self, cubic3fold):
        assert total_chern_series(cubic3fold, 0).coeffs == (1, -2, 4, 2)

    def test_total_chern_series_when_cubic_at_two_then_top_ten(self, cubic3fold):
        assert total_chern_series(cubic3fold, 2).top == 10

    def test_total_chern_series_when_curve_then_errors(self):
        with pytest.raises(UsageError):
            total_chern_series(WeightedHypersurface((1, 1, 1), 2), 0)

    def test_total_chern_series_when_not_well_formed_then_warns(self, caplog):
        X = WeightedHypersurface((2, 2, 2, 1), 6)
        with caplog.at_level("WARNING", logger="fanobound"):
            total_chern_series(X, 1)
        assert "not well-formed" in caplog.text

    def test_total_chern_series_when_compared_with_sympy_then_agrees(self):
        sympy = pytest.importorskip("sympy")
        h = sympy.symbols("h")
        cases = [((1, 1, 1, 1, 1), 3, 2), ((3, 2, 1, 1, 1), 6, 5), ((2, 1, 1, 1, 1), 4, 3), ((5, 3, 1, 1), 11, 7)]
        for weights, degree, a in cases:
            X = WeightedHypersurface(weights, degree)
            n = X.dimension
            expr = sympy.Integer(1)
            for w in weights:
                expr *= 1 + (a - w) * h
            expr /= (1 + (a - degree) * h) * (1 + a * h)
            expansion = sympy.expand(sympy.series(expr, h, 0, n + 1).removeO())
            expected = tuple(Fraction(str(expansion.coeff(h, j))) for j in range(n + 1))
            assert total_chern_series(X, a).coeffs == expected


class TestResidues:
    """Closed form of the top coefficient and the residue sum."""

    @pytest.mark.parametrize(
        "weights,degree,a,expected",
        [
            ((1, 1, 1, 1, 1), 3, 2, 10),
            ((2, 1, 1, 1, 1), 4, 3, 35),
            ((3, 2, 1, 1, 1), 6, 5, 173),
        ],
    )
    def test_top_chern_residue_when_paper_mode_then_matches_series(self, weights, degree, a, expected):
        X = WeightedHypersurface(weights, degree)
        assert top_chern_residue(X, a) == expected
        assert total_chern_series(X, a).top == expected

    def test_residue_sum_check_when_cubic_then_four_residues_cancel(self, cubic3fold):
        check = residue_sum_check(cubic3fold, 2)
        assert check.res_infinity == Fraction(1, 2)
        assert check.res_twist_pole == Fraction(-32, 3)
        assert check.res_twist_zero == Fraction(1, 6)
        assert check.res_zero == 10
        assert check.total == 0

    @pytest.mark.parametrize("a", [0, 3])
    def test_top_chern_residue_when_a_is_zero_or_degree_then_inapplicable(self, cubic3fold, a):
        with pytest.raises(FormulaInapplicableError, match="pro-top-chern-cal"):
            top_chern_residue(cubic3fold, a)

    def test_top_chern_residue_when_trailing_weight_not_one_then_hypothesis_error(self):
        with pytest.raises(HypothesisError) as info:
            top_chern_residue(WeightedHypersurface((3, 2, 2, 1, 1), 6), 5)
        assert info.value.rule == "pro-top-chern-cal"
        assert info.value.exit_code == 2


class TestNumbers:
    """Chern numbers, Euler characteristics and the Whitney twist."""

    def test_chern_numbers_when_cubic_then_scaled_by_degree(self, cubic3fold):
        assert hyperplane_power(cubic3fold) == 3
        assert chern_numbers(cubic3fold) == (-6, 12, 6)

    @pytest.mark.parametrize("n,d,chi", [(2, 2, 4), (2, 3, 9), (2, 4, 24), (3, 5, -200), (3, 3, -6)])
    def test_euler_characteristic_when_smooth_hypersurface_then_known(self, n, d, chi):
        assert euler_characteristic(WeightedHypersurface.projective(n, d)) == chi

    def test_euler_characteristic_when_sextic_del_pezzo_then_minus_38(self, sextic3fold):
        assert chern_numbers(sextic3fold) == (-2, 12, 38)
        assert euler_characteristic(sextic3fold) == -38

    def test_hyperplane_power_when_not_well_formed_then_hypothesis_error(self):
        with pytest.raises(HypothesisError, match="notation-well-formed"):
            hyperplane_power(WeightedHypersurface((2, 2, 2, 1), 6))

    def test_twisted_chern_report_when_cubic_then_top_number_thirty(self, cubic3fold):
        report = twisted_chern_report(cubic3fold, 2)
        assert report.top_coefficient == 10
        assert report.top_number == 30

    def test_whitney_twist_coefficient_when_cubic_then_matches_twisted_series(self, cubic3fold):
        for u in range(0, 6):
            assert whitney_twist_coefficient(cubic3fold, u) == total_chern_series(cubic3fold, u).top


class TestPositivity:
    """Margin at the twist a_0 + a_1."""

    @pytest.mark.parametrize(
        "weights,degree,margin",
        [((1, 1, 1, 1, 1), 3, 2), ((2, 1, 1, 1, 1), 4, 8), ((3, 2, 1, 1, 1), 6, 48)],
    )
    def test_wps_positivity_when_del_pezzo_models_then_known_margins(self, weights, degree, margin):
        result = wps_positivity(WeightedHypersurface(weights, degree))
        assert result.margin == margin
        assert result.holds

    def test_wps_positivity_when_cubic_then_margin_in_units_of_h(self, cubic3fold):
        result = wps_positivity(cubic3fold)
        assert (result.twist, result.top_coefficient, result.threshold) == (2, 10, 8)
        assert result.margin_number == 6

    def test_wps_positivity_when_degree_too_small_then_hypothesis_error(self):
        with pytest.raises(HypothesisError, match="thm-wps-ci"):
            wps_positivity(WeightedHypersurface.projective(2, 2))

    def test_wps_positivity_when_small_grid_then_every_margin_positive(self):
        checked = 0
        for X in paper_mode_hypersurfaces(4, 5, 12):
            if X.degree >= X.positivity_twist + 1:
                assert wps_positivity(X).holds, X.label
                checked += 1
        assert checked > 50


class TestGlobalGeneration:
    def test_gg_classify_when_second_weight_one_then_globally_generated(self, cubic3fold, sextic3fold):
        assert gg_classify(cubic3fold) is GlobalGeneration.GLOBALLY_GENERATED
        assert gg_classify(sextic3fold) is GlobalGeneration.GG_AWAY_FROM_FINITE_POINTS

    def test_variety_invariants_when_paper_mode_then_carries_gg_flag(self, cubic3fold):
        inv = variety_invariants(cubic3fold)
        assert inv.h_power == 3
        assert inv.chern_numbers == (-6, 12, 6)
        assert (inv.gg_status, inv.gg_twist) == ("GloballyGenerated", 2)

    def test_variety_invariants_when_not_paper_mode_then_no_gg_flag(self):
        inv = variety_invariants(WeightedHypersurface((3, 2, 2, 1, 1), 6))
        assert inv.gg_status is None


class TestG:
    """g(x) = a(x-1)^n - x(a-1)^n - (x-a)."""

    def test_g_value_when_known_points_then_matches(self):
        assert g_value(2, 2, 3) == 4
        assert g_value(2, 3, 3) == 12

    def test_g_value_when_a_below_two_then_errors(self):
        with pytest.raises(UsageError):
            g_value(1, 3, 3)

    def test_g_value_when_x_grows_then_strictly_increases(self):
        for a in range(2, 7):
            for n in range(2, 6):
                values = [g_value(a, n, x) for x in range(a + 1, a + 15)]
                assert values[0] > 0
                assert all(b > c for b, c in zip(values[1:], values))
