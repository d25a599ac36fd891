"""
Chern classes of twisted cotangent bundles of weighted hypersurfaces.

For X of degree d in P(a_0, ..., a_{n+1}) the total Chern class is

    c(Omega_X(a)) = prod_i (1 + (a - a_i) h) / ((1 + (a - d) h)(1 + a h))

expanded modulo h^(n+1). The top coefficient also has a closed form
obtained from the residue theorem on the rational one-form behind the
series; both are computed here so they can be checked against each other.
"""
# this_file: python/fanobound/chern.py

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Iterable, Tuple

from .bound import VarietyInvariants
from .errors import FormulaInapplicableError, HypothesisError, UsageError
from .exact import TruncSeries, series_inv, series_mul, series_prod

logger = logging.getLogger(__name__)

RULE_WPS_CI = "thm-wps-ci"
RULE_WPS_GG = "lem-wps-gg"
RULE_TOP_CHERN = "pro-top-chern-cal"
RULE_WELL_FORMED = "notation-well-formed"


@dataclass(frozen=True)
class WeightedHypersurface:
    """Hypersurface of degree `degree` in P(weights); weights kept sorted descending."""

    weights: Tuple[int, ...]
    degree: int

    def __post_init__(self):
        weights = tuple(sorted((int(w) for w in self.weights), reverse=True))
        if len(weights) < 2:
            raise UsageError(f"need at least two weights, got {len(weights)}")
        if any(w <= 0 for w in weights):
            raise UsageError(f"weights must be positive integers, got {weights}")
        if int(self.degree) <= 0:
            raise UsageError(f"degree must be a positive integer, got {self.degree}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "degree", int(self.degree))

    @classmethod
    def parse(cls, weights: str, degree: int) -> "WeightedHypersurface":
        """Build from a comma separated weight list such as "3,2,1,1,1"."""
        try:
            values = [int(part) for part in weights.split(",") if part.strip()]
        except ValueError as exc:
            raise UsageError(f"invalid weight list {weights!r}") from exc
        return cls(tuple(values), degree)

    @classmethod
    def projective(cls, n: int, degree: int) -> "WeightedHypersurface":
        """Hypersurface of the given degree in ordinary projective (n+1)-space."""
        return cls((1,) * (n + 2), degree)

    @property
    def dimension(self) -> int:
        return len(self.weights) - 2

    @property
    def a0(self) -> int:
        return self.weights[0]

    @property
    def a1(self) -> int:
        return self.weights[1]

    @property
    def is_well_formed(self) -> bool:
        size = len(self.weights) - 1
        return all(reduce(math.gcd, subset) == 1 for subset in combinations(self.weights, size))

    @property
    def is_paper_mode(self) -> bool:
        return all(w == 1 for w in self.weights[2:]) and math.gcd(self.a0, self.a1) == 1

    @property
    def positivity_twist(self) -> int:
        return self.a0 + self.a1

    @property
    def label(self) -> str:
        return f"X_{self.degree} in P({','.join(str(w) for w in self.weights)})"


@dataclass(frozen=True)
class ValidationReport:
    well_formed: bool
    paper_mode: bool
    degree_ok: bool
    problems: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class ChernReport:
    twist: int
    series: TruncSeries
    top_coefficient: Fraction
    h_power: Fraction
    top_number: Fraction


@dataclass(frozen=True)
class ResidueCheck:
    res_infinity: Fraction
    res_twist_pole: Fraction
    res_twist_zero: Fraction
    res_zero: Fraction

    @property
    def total(self) -> Fraction:
        return self.res_infinity + self.res_twist_pole + self.res_twist_zero + self.res_zero


@dataclass(frozen=True)
class PositivityResult:
    twist: int
    top_coefficient: Fraction
    threshold: Fraction
    margin: Fraction
    margin_number: Fraction

    @property
    def holds(self) -> bool:
        return self.margin > 0


class GlobalGeneration(str, Enum):
    GLOBALLY_GENERATED = "GloballyGenerated"
    GG_AWAY_FROM_FINITE_POINTS = "GGAwayFromFinitePoints"


def validate(
    X: WeightedHypersurface, strict_paper_mode: bool = False, for_positivity: bool = False
) -> ValidationReport:
    """Collect every problem with X instead of raising on the first."""
    problems = []
    if X.dimension < 2:
        problems.append(f"dimension n = {X.dimension} < 2")
    well_formed = X.is_well_formed
    if not well_formed:
        problems.append("not well-formed: some gcd of all but one weight exceeds 1")
    paper_mode = X.is_paper_mode
    degree_ok = X.degree >= X.a0 + X.a1 + 1
    if strict_paper_mode:
        if any(w != 1 for w in X.weights[2:]):
            problems.append("weights beyond a_0, a_1 must all be 1")
        if math.gcd(X.a0, X.a1) != 1:
            problems.append(f"a_0 = {X.a0} and a_1 = {X.a1} are not coprime")
        if for_positivity and not degree_ok:
            problems.append(f"d = {X.degree} < a_0 + a_1 + 1 = {X.a0 + X.a1 + 1}")
    return ValidationReport(well_formed, paper_mode, degree_ok, tuple(problems))


def _require_dimension(X: WeightedHypersurface) -> None:
    if X.dimension < 2:
        raise UsageError(f"{X.label}: dimension {X.dimension} is below 2")


def _require_well_formed(X: WeightedHypersurface) -> None:
    _require_dimension(X)
    if not X.is_well_formed:
        raise HypothesisError(f"{X.label} is not well-formed", RULE_WELL_FORMED)


def _require_paper_mode(X: WeightedHypersurface, rule: str) -> None:
    _require_dimension(X)
    if any(w != 1 for w in X.weights[2:]):
        raise HypothesisError(f"{X.label}: weights a_2, ... must all equal 1", rule)
    if math.gcd(X.a0, X.a1) != 1:
        raise HypothesisError(f"{X.label}: a_0 and a_1 must be coprime", rule)


@lru_cache(maxsize=8192)
def total_chern_series(X: WeightedHypersurface, a: int) -> TruncSeries:
    """c(Omega_X(a)) as a series in h, truncated at h^(n+1)."""
    _require_dimension(X)
    if not X.is_well_formed:
        logger.warning("%s is not well-formed; expanding the formal series anyway", X.label)
    n = X.dimension
    numerator = series_prod((TruncSeries.linear(a - w, n) for w in X.weights), n)
    denominator = series_mul(TruncSeries.linear(a - X.degree, n), TruncSeries.linear(a, n))
    result = series_mul(numerator, series_inv(denominator))
    logger.debug("total_chern_series %s a=%s -> %s", X.label, a, result)
    return result


def top_chern_residue(X: WeightedHypersurface, a: int) -> Fraction:
    """Closed form of the h^n coefficient of c(Omega_X(a)); needs d != a and a != 0."""
    _require_paper_mode(X, RULE_TOP_CHERN)
    d, n = X.degree, X.dimension
    if d == a or a == 0 or d == 0:
        raise FormulaInapplicableError(
            f"closed form needs a*d*(a-d) != 0, got a={a}, d={d}", RULE_TOP_CHERN
        )
    bracket = (
        d * math.prod(a - w for w in X.weights)
        - a * math.prod(d - w for w in X.weights)
        + (-1) ** (n + 1) * (d - a) * math.prod(X.weights)
    )
    return Fraction(bracket, a * d * (a - d))


def residue_sum_check(X: WeightedHypersurface, a: int) -> ResidueCheck:
    """The four residues of the generating one-form; `total` must be 0.

    Res_0 is taken from the series expansion so that the check compares
    two independent computations.
    """
    _require_paper_mode(X, RULE_TOP_CHERN)
    d, n = X.degree, X.dimension
    if d == a or a == 0:
        raise FormulaInapplicableError(
            f"residues need a != 0 and a != d, got a={a}, d={d}", RULE_TOP_CHERN
        )
    return ResidueCheck(
        res_infinity=Fraction(math.prod(a - w for w in X.weights), (d - a) * a),
        res_twist_pole=Fraction(math.prod(d - w for w in X.weights), (a - d) * d),
        res_twist_zero=Fraction((-1) ** (n + 1) * math.prod(X.weights), a * d),
        res_zero=total_chern_series(X, a).top,
    )


def hyperplane_power(X: WeightedHypersurface) -> Fraction:
    """O_X(1)^n = d / prod(a_i)."""
    _require_well_formed(X)
    return Fraction(X.degree, math.prod(X.weights))


def twisted_chern_report(X: WeightedHypersurface, a: int) -> ChernReport:
    series = total_chern_series(X, a)
    h_power = hyperplane_power(X)
    return ChernReport(a, series, series.top, h_power, series.top * h_power)


def chern_numbers(X: WeightedHypersurface) -> Tuple[Fraction, ...]:
    """(c_1 H^(n-1), ..., c_n) of Omega_X."""
    series = total_chern_series(X, 0)
    h_power = hyperplane_power(X)
    return tuple(series[j] * h_power for j in range(1, X.dimension + 1))


def euler_characteristic(X: WeightedHypersurface) -> Fraction:
    return (-1) ** X.dimension * chern_numbers(X)[-1]


def whitney_twist_coefficient(X: WeightedHypersurface, u: int) -> Fraction:
    """h^n coefficient of c(Omega_X(u)) rebuilt from the untwisted classes."""
    series = total_chern_series(X, 0)
    n = X.dimension
    return sum((series[n - i] * Fraction(u) ** i for i in range(n + 1)), Fraction(0))


def wps_positivity(X: WeightedHypersurface) -> PositivityResult:
    """Margin of c_n(Omega_X(a_0+a_1)) over (a_0+a_1)^n, in units of H^n."""
    _require_paper_mode(X, RULE_WPS_CI)
    twist = X.positivity_twist
    if X.degree < twist + 1:
        raise HypothesisError(
            f"{X.label}: d = {X.degree} violates d >= a_0 + a_1 + 1 = {twist + 1}", RULE_WPS_CI
        )
    top = top_chern_residue(X, twist)
    threshold = Fraction(twist) ** X.dimension
    margin = top - threshold
    result = PositivityResult(twist, top, threshold, margin, margin * hyperplane_power(X))
    if not result.holds:
        logger.error("positivity failed for %s: margin %s", X.label, margin)
    return result


def g_value(a: int, n: int, x: int) -> Fraction:
    """g(x) = a(x-1)^n - x(a-1)^n - (x-a)."""
    if a < 2 or n < 2:
        raise UsageError(f"g needs a >= 2 and n >= 2, got a={a}, n={n}")
    return Fraction(a * (x - 1) ** n - x * (a - 1) ** n - (x - a))


def gg_classify(X: WeightedHypersurface) -> GlobalGeneration:
    """Global generation of Omega_X(a_0 + a_1)."""
    _require_paper_mode(X, RULE_WPS_GG)
    _require_well_formed(X)
    if X.a1 == 1:
        return GlobalGeneration.GLOBALLY_GENERATED
    return GlobalGeneration.GG_AWAY_FROM_FINITE_POINTS


def variety_invariants(X: WeightedHypersurface) -> VarietyInvariants:
    """Invariants for the bound engine, with the global-generation flag when it is known."""
    gg_status = None
    gg_twist = None
    if X.is_paper_mode:
        gg_status = gg_classify(X).value
        gg_twist = X.positivity_twist
    return VarietyInvariants(
        X.dimension, hyperplane_power(X), chern_numbers(X), X.label, gg_status, gg_twist
    )


def paper_mode_hypersurfaces(max_a0: int, max_n: int, max_d: int) -> Iterable[WeightedHypersurface]:
    """Every X with weights (a_0, a_1, 1, ..., 1), gcd(a_0, a_1) = 1, a_0 <= max_a0, 2 <= n <= max_n, 1 <= d <= max_d."""
    for a0 in range(1, max_a0 + 1):
        for a1 in range(1, a0 + 1):
            if math.gcd(a0, a1) != 1:
                continue
            for n in range(2, max_n + 1):
                for d in range(1, max_d + 1):
                    yield WeightedHypersurface((a0, a1) + (1,) * n, d)
