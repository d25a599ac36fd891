"""Grid checks of the Chern identities."""
# this_file: tests/test_identities.py

from fractions import Fraction

import pytest

from fanobound import identities
from fanobound.errors import UsageError
from fanobound.identities import SUITES, GridBounds, IdentityReport, check_identities, summary_rows


@pytest.fixture
def small_grid():
    return GridBounds(max_a0=3, max_n=4, max_d=8, twists=(1, 2, 3), g_max_a=5, g_max_n=4, g_max_x=10)


class TestGridBounds:
    """Caps and twist selection."""

    @pytest.mark.parametrize(
        "kwargs",
        [{"max_a0": 13}, {"max_n": 1}, {"max_d": 25}, {"twists": (0,)}, {"twists": (13,)}, {"g_max_x": 2}],
    )
    def test_grid_bounds_when_outside_caps_then_usage_error(self, kwargs):
        with pytest.raises(UsageError):
            GridBounds(**kwargs)

    def test_twists_for_when_default_then_includes_positivity_twist(self, sextic3fold):
        assert GridBounds(twists=(1, 2)).twists_for(sextic3fold) == (1, 2, 5)

    def test_twists_for_when_diagonal_only_then_degree(self, sextic3fold):
        assert GridBounds(diagonal_only=True).twists_for(sextic3fold) == (6,)


class TestCheckIdentities:
    """Every suite agrees on clean grids; failures are recorded."""

    def test_check_identities_when_small_grid_then_no_counterexample(self, small_grid):
        report = check_identities(small_grid)
        assert report.ok
        assert report.exit_code == 0
        assert report.counterexample is None
        for name in SUITES:
            assert report.suites[name].checked > 0, name

    def test_check_identities_when_default_grid_then_no_counterexample(self):
        report = check_identities()
        assert report.ok
        assert report.failures == 0

    def test_check_identities_when_diagonal_only_then_closed_form_skipped(self):
        report = check_identities(GridBounds(max_a0=3, max_n=4, max_d=8, diagonal_only=True))
        assert report.ok
        assert report.suites["oracle"].checked == 0
        assert report.suites["oracle"].skipped > 0
        assert report.suites["residue-sum"].skipped == report.suites["oracle"].skipped
        assert report.suites["positivity"].checked == 0
        assert report.suites["g-monotone"].checked == 0

    def test_check_identities_when_closed_form_broken_then_counterexample(self, small_grid, monkeypatch):
        monkeypatch.setattr(identities, "top_chern_residue", lambda X, a: Fraction(-1))
        report = check_identities(small_grid)
        assert not report.ok
        assert report.exit_code == 3
        assert report.counterexample["suite"] == "oracle"

    def test_record_when_second_failure_then_first_counterexample_kept(self):
        report = IdentityReport(GridBounds())
        report.record("whitney", False, subject="first")
        report.record("oracle", False, subject="second")
        report.record("oracle", True, subject="third")
        assert report.counterexample == {"suite": "whitney", "subject": "first"}
        assert report.failures == 2
        assert report.suites["oracle"].checked == 2

    def test_summary_rows_when_report_then_one_row_per_suite(self, small_grid):
        rows = summary_rows(check_identities(small_grid))
        assert [row[0] for row in rows] == list(SUITES)
