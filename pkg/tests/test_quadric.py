"""Quadric endomorphism decision and witnesses."""
# this_file: tests/test_quadric.py

import random
from fractions import Fraction

import pytest

from fanobound.errors import DegenerateInputError, UsageError
from fanobound.exact import MultiPoly, poly_power_substitute
from fanobound.quadric import (
    I,
    GaussianRational,
    MonomialMap,
    QuadricForm,
    decide,
    diagonal_to_normal_form,
    matrix_rank,
    paper_k,
    pencil_projection,
    verify_invariance,
    witness_for_k,
)


def xs(n):
    return [MultiPoly.variable(i, n) for i in range(n)]


class TestGaussianRational:
    def test_mul_when_i_squared_then_minus_one(self):
        assert I * I == -1

    def test_truediv_when_conjugates_then_i(self):
        assert (1 + I) / (1 - I) == I

    def test_str_when_parts_then_readable(self):
        assert str(I) == "i"
        assert str(GaussianRational(1, -1)) == "1 - i"
        assert str(GaussianRational(Fraction(1, 2))) == "1/2"

    def test_hash_when_real_then_matches_fraction(self):
        assert hash(GaussianRational(3)) == hash(Fraction(3))


class TestQuadricForm:
    """Gram matrices, rank and congruence."""

    def test_constructor_when_not_symmetric_then_errors(self):
        with pytest.raises(UsageError, match="not symmetric"):
            QuadricForm(1, ((1, 2), (3, 1)))

    def test_normal_when_rank_parameter_then_rank_k_plus_one(self):
        Q = QuadricForm.normal(5, 3)
        assert Q.rank == 4
        assert paper_k(Q) == 3
        assert Q.singular_locus_dim == 1

    def test_to_poly_when_off_diagonal_then_doubles(self):
        x0, x1 = xs(2)
        assert QuadricForm(1, ((0, 1), (1, 0))).to_poly() == 2 * x0 * x1

    def test_paper_k_when_zero_matrix_then_degenerate(self):
        with pytest.raises(DegenerateInputError):
            paper_k(QuadricForm.diagonal([0, 0, 0]))

    def test_matrix_rank_when_rational_entries_then_exact(self):
        rows = [[Fraction(1, 2), 1, 0], [1, 2, 0], [0, 0, Fraction(1, 3)]]
        assert matrix_rank([[Fraction(v) for v in row] for row in rows]) == 2

    def test_matrix_rank_when_empty_or_dependent_rows_then_exact(self):
        assert matrix_rank([]) == 0
        rows = [[Fraction(i + j, j + 1) for j in range(5)] for i in range(3)]
        rows.append([a + b for a, b in zip(rows[0], rows[2])])
        rows.append([2 * a - Fraction(1, 3) * b for a, b in zip(rows[1], rows[3])])
        assert matrix_rank(rows) == matrix_rank(rows[:3]) == 2

    def test_congruent_when_random_invertible_then_rank_preserved(self):
        rng = random.Random(99)
        for _ in range(15):
            size = rng.randint(2, 6)
            k = rng.randint(0, size - 1)
            Q = QuadricForm.normal(size - 1, k)
            p = [[Fraction(0)] * size for _ in range(size)]
            for i in range(size):
                p[i][i] = Fraction(rng.choice([-3, -1, 1, 2, 5]))
                for j in range(i + 1, size):
                    p[i][j] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            assert paper_k(Q.congruent(p)) == k


class TestDecide:
    """Endomorphism exists exactly when k <= 3."""

    def test_decide_when_rank_four_then_witness_and_quotient(self):
        endo = decide(QuadricForm.normal(5, 3), 2)
        x = xs(6)
        assert endo.admits
        assert endo.rule == "thm-singular-quadric"
        assert str(endo.witness.form) == "x0*x1 - x2*x3"
        assert endo.witness.degree == 16
        assert endo.certificate.invariant
        assert endo.certificate.quotient == x[0] * x[1] + x[2] * x[3]

    def test_decide_when_cone_over_conic_then_conic_witness(self):
        endo = decide(QuadricForm.normal(4, 2), 2)
        x0, x1, x2, _, _ = xs(5)
        assert endo.witness.form == x1 * x1 - x0 * x2
        assert endo.certificate.quotient == x1 * x1 + x0 * x2

    def test_decide_when_two_hyperplanes_then_per_component(self):
        endo = decide(QuadricForm.normal(3, 1), 3)
        assert endo.witness.per_component
        assert endo.witness.degree == 9

    def test_decide_when_double_hyperplane_then_non_reduced(self):
        endo = decide(QuadricForm.diagonal([1, 0, 0, 0]))
        assert endo.admits
        assert endo.paper_k == 0
        assert endo.witness.non_reduced

    @pytest.mark.parametrize("n,k", [(4, 4), (5, 5), (6, 4), (7, 6)])
    def test_decide_when_rank_at_least_five_then_none_and_remainder(self, n, k):
        endo = decide(QuadricForm.normal(n, k))
        assert not endo.admits
        assert endo.witness is None
        assert not endo.certificate.invariant
        assert not endo.certificate.remainder.is_zero()

    def test_decide_when_below_criterion_range_then_remark_rule(self, caplog):
        with caplog.at_level("WARNING", logger="fanobound"):
            endo = decide(QuadricForm.normal(2, 2))
        assert endo.rule == "rem-quadric-totally"
        assert not endo.in_theorem_range
        assert "below the dimension" in caplog.text

    def test_decide_when_non_diagonal_rank_four_then_admits(self):
        Q = QuadricForm.normal(4, 3).congruent([[1, 1, 0, 0, 0], [0, 1, 2, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
        assert decide(Q).admits

    def test_verify_invariance_when_signed_diagonal_rank_at_least_five_then_never_invariant(self):
        for n in range(4, 9):
            for rank in range(5, n + 2):
                for minus in range(rank // 2 + 1):
                    entries = [-1] * minus + [1] * (rank - minus) + [0] * (n + 1 - rank)
                    Q = QuadricForm.diagonal(entries)
                    assert paper_k(Q) >= 4
                    for q in (2, 3):
                        result = verify_invariance(Q.to_poly(), MonomialMap(q, n + 1))
                        assert not result.invariant
                        assert not result.remainder.is_zero()


class TestWitnesses:
    def test_witness_for_k_when_k_exceeds_n_then_errors(self):
        with pytest.raises(UsageError):
            witness_for_k(3, 2, 2)

    def test_witness_for_k_when_any_q_then_invariant(self):
        for k in (1, 2, 3):
            for q in (2, 3, 4, 5):
                w = witness_for_k(k, 4, q)
                assert verify_invariance(w.form, w.map).invariant

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_verify_invariance_when_witness_then_quotient_times_form_is_pullback(self, k, q):
        w = witness_for_k(k, 5, q)
        result = verify_invariance(w.form, w.map)
        assert result.invariant
        assert result.quotient * w.form == poly_power_substitute(w.form, q)
        assert w.degree == q ** 4

    def test_monomial_map_when_exponent_one_then_errors(self):
        with pytest.raises(UsageError):
            MonomialMap(1, 3)

    def test_monomial_map_str_when_rendered_then_shows_power(self):
        assert str(MonomialMap(2, 4)) == "[x0:...:x3] -> [x0^2:...:x3^2]"

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_diagonal_to_normal_form_when_expanded_then_sum_of_squares(self, k):
        assert diagonal_to_normal_form(k).verify()

    def test_diagonal_to_normal_form_when_k_four_then_errors(self):
        with pytest.raises(UsageError):
            diagonal_to_normal_form(4)


class TestPencil:
    """Projection of a diagonal pencil of quadrics."""

    def test_pencil_projection_when_distinct_lambdas_then_smooth(self):
        Q = pencil_projection([0, 1, 2, 3, 4], 0)
        assert Q.ambient_dim == 3
        assert Q.rank == 4

    def test_pencil_projection_when_rational_lambdas_then_exact(self):
        Q = pencil_projection(["1/2", "1/3", 0, 5], 1)
        assert Q.matrix[0][0] == Fraction(1, 6)

    def test_pencil_projection_when_repeated_lambda_then_errors(self):
        with pytest.raises(UsageError, match="distinct"):
            pencil_projection([0, 1, 1, 2], 0)

    def test_pencil_projection_when_too_few_then_errors(self):
        with pytest.raises(UsageError):
            pencil_projection([0, 1, 2], 0)

    def test_pencil_projection_when_random_distinct_lambdas_then_full_rank(self):
        rng = random.Random(6007)
        for _ in range(20):
            size = rng.randint(4, 8)
            lambdas = set()
            while len(lambdas) < size:
                lambdas.add(Fraction(rng.randint(-20, 20), rng.randint(1, 7)))
            lambdas = sorted(lambdas)
            rng.shuffle(lambdas)
            index = rng.randrange(size)
            Q = pencil_projection([str(v) for v in lambdas], index)
            assert Q.ambient_dim == size - 2
            assert Q.rank == size - 1
            assert paper_k(Q) == size - 2
