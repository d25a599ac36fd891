"""
Exhaustive desk-scale checks of the identities behind the Chern engine.

Each suite walks a finite grid of hypersurfaces with weights (a_0, a_1, 1, ..., 1) (or of the
parameters of g) and compares two independent computations exactly. The
first disagreement is kept as a counterexample; a clean run has none.
"""
# this_file: python/fanobound/identities.py

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .chern import (
    WeightedHypersurface,
    g_value,
    paper_mode_hypersurfaces,
    residue_sum_check,
    top_chern_residue,
    total_chern_series,
    whitney_twist_coefficient,
    wps_positivity,
)
from .errors import EXIT_COUNTEREXAMPLE, UsageError

logger = logging.getLogger(__name__)

SUITES = ("oracle", "residue-sum", "series-shape", "whitney", "positivity", "g-monotone")

CAP_A0 = 12
CAP_N = 16
CAP_D = 24
CAP_TWIST = 12


@dataclass(frozen=True)
class GridBounds:
    """Grid of hypersurfaces with coprime (a_0, a_1, 1, ..., 1) weights: a_0 <= max_a0, 2 <= n <= max_n, 1 <= d <= max_d.

    Every X is also checked at its own twist a_0 + a_1. With
    `diagonal_only` the only twist visited is a = d.
    """

    max_a0: int = 6
    max_n: int = 10
    max_d: int = 12
    twists: Tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    g_max_a: int = 20
    g_max_n: int = 10
    g_max_x: int = 50
    diagonal_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted(set(int(t) for t in self.twists))))
        limits = (("max_a0", self.max_a0, CAP_A0), ("max_n", self.max_n, CAP_N), ("max_d", self.max_d, CAP_D))
        for name, value, cap in limits:
            if not 1 <= value <= cap:
                raise UsageError(f"{name}={value} outside [1, {cap}]")
        if self.max_n < 2:
            raise UsageError("max_n must be at least 2")
        if any(not 1 <= t <= CAP_TWIST for t in self.twists):
            raise UsageError(f"twists must lie in [1, {CAP_TWIST}], got {self.twists}")
        if self.g_max_a < 2 or self.g_max_n < 2 or self.g_max_x < 3:
            raise UsageError("g grid needs a >= 2, n >= 2 and x >= 3")

    def hypersurfaces(self) -> Iterator[WeightedHypersurface]:
        return paper_mode_hypersurfaces(self.max_a0, self.max_n, self.max_d)

    def twists_for(self, X: WeightedHypersurface) -> Tuple[int, ...]:
        if self.diagonal_only:
            return (X.degree,)
        return tuple(sorted(set(self.twists) | {X.positivity_twist}))


@dataclass
class SuiteCount:
    checked: int = 0
    failed: int = 0
    skipped: int = 0


@dataclass
class IdentityReport:
    bounds: GridBounds
    suites: Dict[str, SuiteCount] = field(default_factory=lambda: {name: SuiteCount() for name in SUITES})
    counterexample: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return all(count.failed == 0 for count in self.suites.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else EXIT_COUNTEREXAMPLE

    @property
    def failures(self) -> int:
        return sum(count.failed for count in self.suites.values())

    def record(self, suite: str, passed: bool, **detail: Any) -> None:
        count = self.suites[suite]
        count.checked += 1
        if passed:
            return
        count.failed += 1
        logger.error("identity %s failed: %s", suite, detail)
        if self.counterexample is None:
            self.counterexample = {"suite": suite, **detail}


def _check_hypersurface(X: WeightedHypersurface, bounds: GridBounds, report: IdentityReport) -> None:
    label = X.label
    n = X.dimension
    series0 = total_chern_series(X, 0)
    expected_h1 = X.degree - sum(X.weights)
    report.record(
        "series-shape",
        series0[0] == 1 and series0[1] == expected_h1,
        subject=label, expected=[1, expected_h1], actual=[series0[0], series0[1]],
    )
    for a in bounds.twists_for(X):
        series = total_chern_series(X, a)
        if a == X.degree:
            report.suites["oracle"].skipped += 1
            report.suites["residue-sum"].skipped += 1
            logger.debug("skip %s at a=d=%s: closed form inapplicable", label, a)
        else:
            closed = top_chern_residue(X, a)
            report.record("oracle", closed == series.top, subject=label, twist=a, expected=series.top, actual=closed)
            total = residue_sum_check(X, a).total
            report.record("residue-sum", total == 0, subject=label, twist=a, expected=0, actual=total)
        rebuilt = whitney_twist_coefficient(X, a)
        report.record("whitney", rebuilt == series[n], subject=label, twist=a, expected=series[n], actual=rebuilt)
    if not bounds.diagonal_only and X.degree >= X.positivity_twist + 1:
        result = wps_positivity(X)
        report.record("positivity", result.holds, subject=label, expected="margin > 0", actual=result.margin)


def _check_g(bounds: GridBounds, report: IdentityReport) -> None:
    for a in range(2, bounds.g_max_a + 1):
        for n in range(2, bounds.g_max_n + 1):
            start = g_value(a, n, a + 1)
            closed = a ** (n + 1) - (a + 1) * (a - 1) ** n - 1
            report.record("g-monotone", start == closed and start > 0, subject=f"a={a},n={n}", x=a + 1, expected=closed, actual=start)
            previous = start
            for x in range(a + 2, bounds.g_max_x + 2):
                current = g_value(a, n, x)
                report.record(
                    "g-monotone", current > previous,
                    subject=f"a={a},n={n}", x=x, expected=f"> {previous}", actual=current,
                )
                previous = current


def check_identities(bounds: Optional[GridBounds] = None) -> IdentityReport:
    """Run every suite over the grid; the report carries counts and the first counterexample."""
    bounds = bounds or GridBounds()
    report = IdentityReport(bounds)
    visited = 0
    for X in bounds.hypersurfaces():
        _check_hypersurface(X, bounds, report)
        visited += 1
    if not bounds.diagonal_only:
        _check_g(bounds, report)
    logger.info("checked %d hypersurfaces, %d failures", visited, report.failures)
    return report


def summary_rows(report: IdentityReport) -> List[Tuple[str, int, int, int]]:
    return [(name, c.checked, c.failed, c.skipped) for name, c in report.suites.items()]
