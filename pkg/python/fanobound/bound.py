"""
Degree bound for finite morphisms Y -> X between Picard-number-one varieties.

Given Chern numbers of Omega_X and Omega_Y, a finite morphism of degree
deg with f^*H_X = m H_Y must satisfy

    m^n H_Y^n * S_X(u)  <=  H_X^n * sum_{i<n} c_{n-i}(Omega_Y) H_Y^i (u m)^i

where S_X(u) = sum_{i<n} c_{n-i}(Omega_X) H_X^i u^i. When S_X(u) > 0 the
left side wins for large m, so the feasible m form a finite set and
deg = m^n H_Y^n / H_X^n is bounded.
"""
# this_file: python/fanobound/bound.py

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import HypothesisError, UsageError
from .exact import RationalLike, to_rational

logger = logging.getLogger(__name__)

RULE_BOUND = "lem-arv-prop2.1"
RULE_CHERN_INEQUALITY = "lem-arv-ggg"

# Scanning stays exhaustive; refuse caps that would not finish at desk scale.
MAX_SCAN = 2_000_000


@dataclass(frozen=True)
class VarietyInvariants:
    """Dimension, H^n and the Chern numbers c_j(Omega) . H^(n-j), j = 1..n."""

    dimension: int
    h_power: Fraction
    chern_numbers: Tuple[Fraction, ...]
    label: str = ""
    # Global generation of Omega(gg_twist * H), when known from the engine.
    gg_status: Optional[str] = None
    gg_twist: Optional[int] = None

    def __post_init__(self):
        if self.dimension < 2:
            raise UsageError(f"dimension must be at least 2, got {self.dimension}")
        object.__setattr__(self, "h_power", to_rational(self.h_power))
        if self.h_power <= 0:
            raise UsageError(f"H^n must be positive, got {self.h_power}")
        numbers = tuple(to_rational(c) for c in self.chern_numbers)
        if len(numbers) != self.dimension:
            raise UsageError(
                f"expected {self.dimension} Chern numbers c_1..c_n, got {len(numbers)}"
            )
        object.__setattr__(self, "chern_numbers", numbers)

    @classmethod
    def from_values(
        cls, dimension: int, h_power: RationalLike, chern_numbers: Sequence[RationalLike], label: str = ""
    ) -> "VarietyInvariants":
        return cls(dimension, to_rational(h_power), tuple(to_rational(c) for c in chern_numbers), label)

    def chern(self, j: int) -> Fraction:
        """c_j(Omega) . H^(n-j); c_0 gives H^n."""
        if j == 0:
            return self.h_power
        return self.chern_numbers[j - 1]


class BoundStatus(str, Enum):
    BOUNDED = "bounded"
    NO_COMPATIBLE_MORPHISM = "no-compatible-morphism"


@dataclass(frozen=True)
class ScanPoint:
    m: int
    lhs: Fraction
    rhs: Fraction

    @property
    def feasible(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class BoundResult:
    status: BoundStatus
    u: int
    lhs_constant: Fraction
    m_max: Optional[int]
    degree_bound: Optional[int]
    degree_bound_exact: Optional[Fraction]
    feasible: Tuple[int, ...]
    cap: int
    cauchy_bound: Fraction
    lhs_poly: Tuple[Fraction, ...]
    rhs_poly: Tuple[Fraction, ...]
    scan: Tuple[ScanPoint, ...] = field(repr=False)
    gg_basis: str = "asserted by caller"


def twisted_top_number(V: VarietyInvariants, t: RationalLike) -> Fraction:
    """c_n(Omega(tH)) as a number: sum_{i=0..n} c_{n-i}(Omega) H^i t^i."""
    t = to_rational(t)
    n = V.dimension
    return sum((V.chern(n - i) * t ** i for i in range(n + 1)), Fraction(0))


def lhs_constant(X: VarietyInvariants, u: RationalLike) -> Fraction:
    """c_n(Omega_X(uH)) - u^n H^n, i.e. the twisted top number without its c_0 term."""
    u = to_rational(u)
    n = X.dimension
    return sum((X.chern(n - i) * u ** i for i in range(n)), Fraction(0))


def bound_polynomials(
    X: VarietyInvariants, Y: VarietyInvariants, u: int
) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Coefficients (index = power of m) of both sides of the m-inequality."""
    if X.dimension != Y.dimension:
        raise UsageError(f"dimensions differ: X is {X.dimension}, Y is {Y.dimension}")
    n = X.dimension
    lhs = [Fraction(0)] * n + [Y.h_power * lhs_constant(X, u)]
    rhs = [X.h_power * Y.chern(n - i) * Fraction(u) ** i for i in range(n)] + [Fraction(0)]
    return tuple(lhs), tuple(rhs)


def _evaluate(coeffs: Sequence[Fraction], m: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * m + c
    return acc


def _cauchy_bound(diff: Sequence[Fraction]) -> Fraction:
    lead = diff[-1]
    return 1 + max((abs(c / lead) for c in diff[:-1]), default=Fraction(0))


def degree_bound(X: VarietyInvariants, Y: VarietyInvariants, u: int) -> BoundResult:
    """Largest feasible pullback multiple m and the induced degree bound N."""
    if u < 1:
        raise UsageError(f"twist u must be a positive integer, got {u}")
    lhs, rhs = bound_polynomials(X, Y, u)
    constant = lhs_constant(X, u)
    if constant <= 0:
        raise HypothesisError(
            f"c_n(Omega_X({u}H)) - {u}^n H^n = {constant} is not positive", RULE_BOUND
        )
    n = X.dimension
    diff = [a - b for a, b in zip(lhs, rhs)]
    cauchy = _cauchy_bound(diff)
    cap = 1 + max(1, math.ceil(cauchy))
    if cap > MAX_SCAN:
        raise UsageError(f"scan cap {cap} exceeds {MAX_SCAN}; inputs are out of desk scale")
    logger.debug("degree_bound: u=%s cauchy=%s cap=%s", u, cauchy, cap)

    scan = tuple(ScanPoint(m, _evaluate(lhs, m), _evaluate(rhs, m)) for m in range(1, cap + 1))
    feasible = tuple(p.m for p in scan if p.feasible)

    if X.gg_status is not None and X.gg_twist == u:
        gg_basis = f"{X.gg_status} at twist {u} (lem-wps-gg)"
    else:
        gg_basis = "asserted by caller"

    if not feasible:
        return BoundResult(
            BoundStatus.NO_COMPATIBLE_MORPHISM, u, constant, None, None, None,
            feasible, cap, cauchy, lhs, rhs, scan, gg_basis,
        )
    m_max = max(feasible)
    exact = Fraction(m_max) ** n * Y.h_power / X.h_power
    return BoundResult(
        BoundStatus.BOUNDED, u, constant, m_max, math.floor(exact), exact,
        feasible, cap, cauchy, lhs, rhs, scan, gg_basis,
    )


def arv_inequality_check(
    X: VarietyInvariants, Y: VarietyInvariants, u: int, m: int, deg: int
) -> bool:
    """deg * c_n(Omega_X(uH_X)) <= c_n(Omega_Y(u m H_Y)) for a hypothetical morphism."""
    if X.dimension != Y.dimension:
        raise UsageError(f"dimensions differ: X is {X.dimension}, Y is {Y.dimension}")
    if m < 1 or deg < 1:
        raise UsageError("m and deg must be positive integers")
    n = X.dimension
    if deg * X.h_power != Fraction(m) ** n * Y.h_power:
        raise UsageError(
            f"deg={deg}, m={m} incompatible: deg*H_X^n={deg * X.h_power} but m^n*H_Y^n={m ** n * Y.h_power}"
        )
    return deg * twisted_top_number(X, u) <= twisted_top_number(Y, u * m)
