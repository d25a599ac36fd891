#!/usr/bin/env python3
"""fanobound sweep tool

Desk-scale tables and timings over the Chern and bound engines.

Usage:
    fanobound-sweep margins            # Positivity margins over coprime (a_0, a_1, 1, ..., 1) weights
    fanobound-sweep euler              # Euler characteristics of smooth hypersurfaces
    fanobound-sweep bounds             # Degree bounds between the named varieties
    fanobound-sweep bench              # Time the engines
    fanobound-sweep timing             # Time the identity suites
"""
# this_file: python/fanobound/sweep.py

import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

import fire

from .bound import degree_bound
from .chern import (
    WeightedHypersurface,
    euler_characteristic,
    paper_mode_hypersurfaces,
    total_chern_series,
    variety_invariants,
    wps_positivity,
)
from .classification import ALIASES
from .errors import FanoboundError
from .exact import format_rational
from .identities import GridBounds, check_identities, summary_rows
from .quadric import QuadricForm, decide
from .report import dumps_json, write_atomic


@dataclass
class TimingResult:
    """Average wall time of one engine call"""

    name: str
    iterations: int
    total_time: float
    avg_time_ms: float


def euler_closed_form(n: int, d: int) -> Fraction:
    """Euler characteristic of a smooth degree-d hypersurface in P^{n+1}."""
    return Fraction((1 - d) ** (n + 2) - 1, d) + n + 2


class FanoboundSweep:
    """Tables and timings over the fanobound engines"""

    def margins(self, max_a0: int = 6, max_n: int = 6, max_d: int = 16, output: Optional[str] = None):
        """Positivity margin c_n(Omega_X(a_0+a_1)) - (a_0+a_1)^n H^n wherever d >= a_0 + a_1 + 1."""
        rows: List[Dict] = []
        print(f"{'Variety':<40} {'Twist':>6} {'Margin':>16}")
        print("-" * 64)
        for X in paper_mode_hypersurfaces(max_a0, max_n, max_d):
            if X.degree < X.positivity_twist + 1:
                continue
            result = wps_positivity(X)
            rows.append({"variety": X.label, "twist": result.twist, "margin": result.margin, "holds": result.holds})
            flag = "" if result.holds else "  FAIL"
            print(f"{X.label:<40} {result.twist:>6} {format_rational(result.margin):>16}{flag}")
        failures = sum(1 for row in rows if not row["holds"])
        print(f"\n{len(rows)} hypersurfaces, {failures} non-positive margins")
        self._save(output, {"margins": rows})
        return 1 if failures else 0

    def euler(self, max_n: int = 5, max_d: int = 6, output: Optional[str] = None):
        """Euler characteristics from the Chern engine next to the closed form."""
        rows: List[Dict] = []
        print(f"{'n':>3} {'d':>3} {'chi':>14} {'closed form':>14}")
        print("-" * 38)
        for n in range(2, max_n + 1):
            for d in range(1, max_d + 1):
                computed = euler_characteristic(WeightedHypersurface.projective(n, d))
                expected = euler_closed_form(n, d)
                rows.append({"n": n, "d": d, "euler": computed, "closed_form": expected})
                flag = "" if computed == expected else "  MISMATCH"
                print(f"{n:>3} {d:>3} {format_rational(computed):>14} {format_rational(expected):>14}{flag}")
        mismatches = sum(1 for row in rows if row["euler"] != row["closed_form"])
        self._save(output, {"euler": rows})
        return 1 if mismatches else 0

    def bounds(self, output: Optional[str] = None):
        """Degree bounds X -> Y between named varieties of equal dimension, at the twist a_0 + a_1."""
        rows: List[Dict] = []
        varieties = {name: ALIASES[name]() for name in sorted(ALIASES)}
        print(f"{'X':<16} {'Y':<16} {'u':>3} {'m_max':>6} {'N':>8}")
        print("-" * 54)
        for x_name, X in varieties.items():
            for y_name, Y in varieties.items():
                if X.dimension != Y.dimension:
                    continue
                u = X.positivity_twist
                try:
                    result = degree_bound(variety_invariants(X), variety_invariants(Y), u)
                except FanoboundError as e:
                    print(f"{x_name:<16} {y_name:<16} {u:>3} ✗ {e}")
                    rows.append({"x": x_name, "y": y_name, "u": u, "error": str(e)})
                    continue
                rows.append({"x": x_name, "y": y_name, "u": u, "m_max": result.m_max, "degree_bound": result.degree_bound})
                print(f"{x_name:<16} {y_name:<16} {u:>3} {str(result.m_max):>6} {str(result.degree_bound):>8}")
        self._save(output, {"bounds": rows})
        return 0

    def bench(self, iterations: int = 20):
        """Average wall time of the main engine calls."""
        cubic = WeightedHypersurface.projective(3, 3)
        sextic = WeightedHypersurface((3, 2, 1, 1, 1), 6)
        invariants = variety_invariants(cubic)
        cases = {
            "chern series cubic3fold a=2": lambda: total_chern_series(cubic, 2),
            "chern series X_6 a=5": lambda: total_chern_series(sextic, 5),
            "degree bound cubic->cubic": lambda: degree_bound(invariants, invariants, 2),
            "quadric decide n=5 k=3": lambda: decide(QuadricForm.normal(5, 3)),
            "quadric decide n=6 k=5": lambda: decide(QuadricForm.normal(6, 5)),
        }
        print(f"Iterations: {iterations}\n")
        print(f"{'Case':<32} {'Avg Time (ms)':>14}")
        print("-" * 48)
        for name, call in cases.items():
            start = time.perf_counter()
            for _ in range(iterations):
                total_chern_series.cache_clear()
                call()
            total = time.perf_counter() - start
            result = TimingResult(name, iterations, total, total / iterations * 1000)
            print(f"{name:<32} {result.avg_time_ms:>14.3f}")
        return 0

    def timing(self, max_a0: int = 6, max_n: int = 10, max_d: int = 12, budget_s: float = 10.0):
        """Wall time of check-identities on a grid, against a time budget."""
        total_chern_series.cache_clear()
        start = time.perf_counter()
        report = check_identities(GridBounds(max_a0=max_a0, max_n=max_n, max_d=max_d))
        elapsed = time.perf_counter() - start
        print(f"{'Suite':<14} {'Checked':>8} {'Failed':>7} {'Skipped':>8}")
        print("-" * 40)
        for name, checked, failed, skipped in summary_rows(report):
            print(f"{name:<14} {checked:>8} {failed:>7} {skipped:>8}")
        verdict = "within" if elapsed < budget_s else "OVER"
        print(f"\nElapsed: {elapsed:.2f} s ({verdict} the {budget_s:.0f} s budget)")
        if not report.ok:
            return report.exit_code
        return 0 if elapsed < budget_s else 1

    def _save(self, output: Optional[str], payload: Dict) -> None:
        if output is None:
            return
        write_atomic(Path(output), dumps_json(payload))
        print(f"Results saved to: {output}")


def main():
    """Entry point for fanobound-sweep"""
    fire.Fire(FanoboundSweep)


if __name__ == "__main__":
    main()
