"""Tests for the fanobound-sweep tables"""
# this_file: tests/test_sweep.py

import json

from fanobound.sweep import FanoboundSweep, euler_closed_form


class TestEulerClosedForm:
    def test_euler_closed_form_when_quintic_threefold_then_minus_two_hundred(self):
        assert euler_closed_form(3, 5) == -200

    def test_euler_closed_form_when_quadric_surface_then_four(self):
        assert euler_closed_form(2, 2) == 4


class TestSweep:
    """Each table returns 0 when every row agrees."""

    def test_euler_when_small_grid_then_matches_closed_form(self, capsys):
        assert FanoboundSweep().euler(max_n=3, max_d=5) == 0
        out = capsys.readouterr().out
        assert "-200" in out
        assert "MISMATCH" not in out

    def test_margins_when_small_grid_then_all_positive(self, capsys):
        assert FanoboundSweep().margins(max_a0=2, max_n=3, max_d=6) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_bounds_when_saved_then_cubic_row_has_bound_one(self, tmp_path):
        output = tmp_path / "bounds.json"
        assert FanoboundSweep().bounds(output=str(output)) == 0
        rows = json.loads(output.read_text())["bounds"]
        cubic = next(row for row in rows if row["x"] == "cubic3fold" and row["y"] == "cubic3fold")
        assert cubic["m_max"] == 1
        assert cubic["degree_bound"] == 1

    def test_bench_when_one_iteration_then_reports_every_case(self, capsys):
        assert FanoboundSweep().bench(iterations=1) == 0
        out = capsys.readouterr().out
        cases = ("chern series cubic3fold a=2", "chern series X_6 a=5", "degree bound cubic->cubic")
        for name in cases + ("quadric decide n=5 k=3", "quadric decide n=6 k=5"):
            assert out.count(name) == 1

    def test_timing_when_small_grid_then_reports_suites(self, capsys):
        assert FanoboundSweep().timing(max_a0=2, max_n=3, max_d=5, budget_s=600) == 0
        out = capsys.readouterr().out
        assert "residue-sum" in out
        assert "within" in out
