"""
Endomorphisms of quadric hypersurfaces.

A quadric of rank k+1 admits a non-isomorphic surjective endomorphism
exactly when k <= 3. For k in {1, 2, 3} the witness is the coordinate
power map on a normal form; invariance is certified by exact division of
the pulled-back form by the form itself.
"""
# this_file: python/fanobound/quadric.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import sympy as sp

from .errors import DegenerateInputError, UsageError
from .exact import (
    MultiPoly,
    RationalLike,
    poly_divmod,
    poly_linear_substitute,
    poly_power_substitute,
    to_rational,
)

logger = logging.getLogger(__name__)

RULE_SINGULAR_QUADRIC = "thm-singular-quadric"
RULE_QUADRIC_TOTALLY = "rem-quadric-totally"
RULE_PENCIL = "pro-complete-intersection-bounded"


@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _lift(other) -> Optional["GaussianRational"]:
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(Fraction(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        norm = other.re ** 2 + other.im ** 2
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        imag = {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        if self.re == 0:
            return imag
        sign = "-" if self.im < 0 else "+"
        mag = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        return f"{self.re} {sign} {mag}"


I = GaussianRational(Fraction(0), Fraction(1))


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank over the rationals."""
    if not rows:
        return 0
    entries = [[Fraction(v) for v in row] for row in rows]
    return sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in row] for row in entries]).rank()


@dataclass(frozen=True)
class QuadricForm:
    """Quadric x^T A x = 0 in projective space of dimension ambient_dim."""

    ambient_dim: int
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        size = self.ambient_dim + 1
        if self.ambient_dim < 1:
            raise UsageError(f"ambient dimension must be at least 1, got {self.ambient_dim}")
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.matrix)
        if len(rows) != size or any(len(row) != size for row in rows):
            raise UsageError(f"quadric in P^{self.ambient_dim} needs a {size}x{size} matrix")
        for i in range(size):
            for j in range(i + 1, size):
                if rows[i][j] != rows[j][i]:
                    raise UsageError(f"matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def diagonal(cls, entries: Sequence[RationalLike]) -> "QuadricForm":
        size = len(entries)
        rows = [[Fraction(0)] * size for _ in range(size)]
        for i, value in enumerate(entries):
            rows[i][i] = to_rational(value)
        return cls(size - 1, tuple(tuple(row) for row in rows))

    @classmethod
    def normal(cls, ambient_dim: int, paper_k: int) -> "QuadricForm":
        """x_0^2 + ... + x_k^2 in P^ambient_dim."""
        if not 0 <= paper_k <= ambient_dim:
            raise UsageError(f"rank parameter k={paper_k} must lie in [0, {ambient_dim}]")
        return cls.diagonal([1] * (paper_k + 1) + [0] * (ambient_dim - paper_k))

    @property
    def rank(self) -> int:
        return matrix_rank(self.matrix)

    @property
    def singular_locus_dim(self) -> int:
        """Dimension of the vertex; -1 when the quadric is smooth."""
        return self.ambient_dim - 1 - paper_k(self)

    def congruent(self, p: Sequence[Sequence[RationalLike]]) -> "QuadricForm":
        """P^T A P."""
        size = self.ambient_dim + 1
        pm = [[to_rational(v) for v in row] for row in p]
        ap = [[sum((self.matrix[i][k] * pm[k][j] for k in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]
        out = [[sum((pm[k][i] * ap[k][j] for k in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]
        return QuadricForm(self.ambient_dim, tuple(tuple(row) for row in out))

    def to_poly(self) -> MultiPoly:
        size = self.ambient_dim + 1
        terms = {}
        for i in range(size):
            for j in range(i, size):
                value = self.matrix[i][j] if i == j else 2 * self.matrix[i][j]
                if value:
                    mono = [0] * size
                    mono[i] += 1
                    mono[j] += 1
                    terms[tuple(mono)] = value
        return MultiPoly(size, terms)


@dataclass(frozen=True)
class MonomialMap:
    """[x_0 : ... : x_n] -> [x_0^q : ... : x_n^q]."""

    exponent: int
    arity: int

    def __post_init__(self):
        if self.exponent < 2:
            raise UsageError(f"power map exponent must be at least 2, got {self.exponent}")
        if self.arity < 1:
            raise UsageError(f"power map needs at least one coordinate, got {self.arity}")

    def pull_back(self, form: MultiPoly) -> MultiPoly:
        if form.nvars != self.arity:
            raise UsageError(f"form has {form.nvars} variables, map has arity {self.arity}")
        return poly_power_substitute(form, self.exponent)

    def __str__(self):
        last = self.arity - 1
        return f"[x0:...:x{last}] -> [x0^{self.exponent}:...:x{last}^{self.exponent}]"


@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    quotient: Optional[MultiPoly]
    remainder: MultiPoly


@dataclass(frozen=True)
class Witness:
    form: MultiPoly
    map: MonomialMap
    degree: int
    per_component: bool = False
    non_reduced: bool = False
    description: str = ""


@dataclass(frozen=True)
class EndoVerdict:
    admits: bool
    paper_k: int
    witness: Optional[Witness]
    rule: str
    in_theorem_range: bool
    certificate: Optional[InvarianceResult] = None


def paper_k(Q: QuadricForm) -> int:
    """rank(A) - 1."""
    rank = Q.rank
    if rank == 0:
        raise DegenerateInputError("the zero matrix does not define a quadric")
    return rank - 1


def verify_invariance(form: MultiPoly, power_map: MonomialMap) -> InvarianceResult:
    """Whether form divides its pull-back; the remainder is the certificate otherwise."""
    if form.is_zero():
        raise UsageError("cannot test invariance of the zero form")
    pulled = power_map.pull_back(form)
    quotient, remainder = poly_divmod(form, pulled)
    if remainder.is_zero():
        return InvarianceResult(True, quotient, remainder)
    logger.debug("form %s not invariant under q=%s: remainder %s", form, power_map.exponent, remainder)
    return InvarianceResult(False, None, remainder)


def _normal_form(k: int, nvars: int) -> MultiPoly:
    x = [MultiPoly.variable(i, nvars) for i in range(nvars)]
    if k == 3:
        return x[0] * x[1] - x[2] * x[3]
    if k == 2:
        return x[1] * x[1] - x[0] * x[2]
    return x[0] * x[1]


def witness_for_k(k: int, n: int, q: int) -> Witness:
    """Normal form and power map witnessing an endomorphism of a rank k+1 quadric in P^n."""
    if k not in (1, 2, 3):
        raise UsageError(f"witnesses exist for k in {{1, 2, 3}}, got k={k}")
    if k > n:
        raise UsageError(f"k={k} exceeds the ambient dimension {n}")
    form = _normal_form(k, n + 1)
    descriptions = {
        3: "cone over a smooth quadric surface",
        2: "cone over a conic",
        1: "union of two hyperplanes",
    }
    return Witness(
        form=form,
        map=MonomialMap(q, n + 1),
        degree=q ** (n - 1),
        per_component=(k == 1),
        description=descriptions[k],
    )


def _double_hyperplane_witness(n: int, q: int) -> Witness:
    form = MultiPoly.variable(0, n + 1) ** 2
    return Witness(form, MonomialMap(q, n + 1), q ** (n - 1), non_reduced=True, description="double hyperplane")


def decide(Q: QuadricForm, q: int = 2) -> EndoVerdict:
    """Admits a non-isomorphic endomorphism iff k <= 3."""
    k = paper_k(Q)
    n = Q.ambient_dim
    in_range = n >= 3
    if not in_range:
        logger.warning("quadric in P^%s is below the dimension the endomorphism criterion covers", n)
    rule = RULE_SINGULAR_QUADRIC if in_range else RULE_QUADRIC_TOTALLY
    if k <= 3:
        witness = _double_hyperplane_witness(n, q) if k == 0 else witness_for_k(k, n, q)
        certificate = verify_invariance(witness.form, witness.map)
        return EndoVerdict(True, k, witness, rule, in_range, certificate)
    certificate = verify_invariance(Q.to_poly(), MonomialMap(q, n + 1))
    return EndoVerdict(False, k, None, rule, in_range, certificate)


def pencil_projection(lambdas: Sequence[RationalLike], i: int) -> QuadricForm:
    """Smooth quadric sum_{j != i} (lambda_j - lambda_i) x_j^2 from a diagonal pencil."""
    values = [to_rational(v) for v in lambdas]
    if len(values) < 4:
        raise UsageError(f"need at least 4 lambdas, got {len(values)}")
    if len(set(values)) != len(values):
        raise UsageError("lambdas must be pairwise distinct")
    if not 0 <= i < len(values):
        raise UsageError(f"index {i} out of range for {len(values)} lambdas")
    entries = [v - values[i] for j, v in enumerate(values) if j != i]
    Q = QuadricForm.diagonal(entries)
    if Q.rank != len(entries):
        raise DegenerateInputError(f"projection of the pencil at {i} is not smooth")
    return Q


@dataclass(frozen=True)
class NormalFormSubstitution:
    """u = M x over the Gaussian rationals with target(u) == sum_{i<=k} x_i^2."""

    k: int
    rows: Tuple[Tuple[GaussianRational, ...], ...]
    target: MultiPoly
    rules: Tuple[str, ...]

    def expand(self) -> MultiPoly:
        return poly_linear_substitute(self.target, self.rows)

    def verify(self) -> bool:
        diagonal = QuadricForm.normal(self.k, self.k).to_poly()
        return (self.expand() - diagonal).is_zero()


def diagonal_to_normal_form(k: int) -> NormalFormSubstitution:
    """Linear change of coordinates taking x_0^2 + ... + x_k^2 to the witness normal form."""
    if k not in (1, 2, 3):
        raise UsageError(f"normal forms exist for k in {{1, 2, 3}}, got k={k}")
    one, zero = GaussianRational(1), GaussianRational(0)
    if k == 1:
        rows = ((one, I), (one, -I))
        rules = ("u0 = x0 + i*x1", "u1 = x0 - i*x1")
    elif k == 2:
        rows = ((one, zero, I), (zero, one, zero), (-one, zero, I))
        rules = ("u0 = x0 + i*x2", "u1 = x1", "u2 = -(x0 - i*x2)")
    else:
        rows = (
            (one, I, zero, zero),
            (one, -I, zero, zero),
            (zero, zero, I, -one),
            (zero, zero, I, one),
        )
        rules = ("u0 = x0 + i*x1", "u1 = x0 - i*x1", "u2 = i*(x2 + i*x3)", "u3 = i*(x2 - i*x3)")
    return NormalFormSubstitution(k, rows, _normal_form(k, k + 1), rules)
