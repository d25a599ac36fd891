"""
Exact arithmetic core: rationals, truncated series in h, sparse polynomials.

Nothing in here ever touches a float. Rationals are `fractions.Fraction`;
`TruncSeries` is a polynomial in h modulo h^(order+1); `MultiPoly` is a
sparse polynomial in x0..x(m-1) with terms kept in graded-lex order.
"""
# this_file: python/fanobound/exact.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp

from .errors import NonInvertibleError, ParseError, UsageError

logger = logging.getLogger(__name__)

Rational = Fraction
Monomial = Tuple[int, ...]
RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats and bools are refused: a float has already lost exactness.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"refusing inexact value {value!r}; use an integer or 'p/q' string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ParseError(f"refusing decimal literal {value!r}; use 'p/q'")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid rational literal {value!r}") from exc
    raise ParseError(f"cannot read {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Truncated series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Polynomial in h truncated at h^(order+1); coeffs[j] multiplies h^j."""

    order: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise UsageError(f"series order must be non-negative, got {self.order}")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise UsageError(
                f"series of order {self.order} needs {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], order: int) -> "TruncSeries":
        """Pad with zeros or drop terms above h^order."""
        values = [to_rational(c) for c in coeffs][: order + 1]
        values += [Fraction(0)] * (order + 1 - len(values))
        return cls(order, tuple(values))

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.from_coeffs([1], order)

    @classmethod
    def linear(cls, slope: RationalLike, order: int) -> "TruncSeries":
        """The series 1 + slope*h."""
        return cls.from_coeffs([1, slope], order)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    @property
    def top(self) -> Fraction:
        return self.coeffs[self.order]

    def _check_order(self, other: "TruncSeries") -> None:
        if self.order != other.order:
            raise UsageError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: Union["TruncSeries", RationalLike]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        factor = to_rational(other)
        return TruncSeries(self.order, tuple(a * factor for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            power = "" if j == 0 else ("h" if j == 1 else f"h^{j}")
            text = str(mag) if (j == 0 or mag != 1) else ""
            body = f"{text}{power}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product modulo h^(order+1)."""
    if a.order != b.order:
        raise UsageError(f"cannot multiply series of orders {a.order} and {b.order}")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += ai * b.coeffs[j]
    return TruncSeries(n, tuple(out))


def series_inv(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse modulo h^(order+1)."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise NonInvertibleError("series with zero constant term is not invertible")
    inv0 = 1 / a0
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = sum((a.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out.append(-inv0 * acc)
    return TruncSeries(a.order, tuple(out))


def series_prod(factors: Iterable[TruncSeries], order: int) -> TruncSeries:
    result = TruncSeries.one(order)
    for factor in factors:
        result = series_mul(factor, result)
    return result


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


def grlex_key(mono: Monomial) -> Tuple[int, Monomial]:
    """Sort key: total degree first, then lexicographic with x0 > x1 > ..."""
    return (sum(mono), mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    """Sparse polynomial in x0..x(nvars-1).

    Coefficients are Fractions; ring-only operations (+, -, *) also accept
    any coefficient type with exact arithmetic, which the quadric module
    uses for Gaussian rationals. Instances are immutable.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, object]] = None):
        if nvars < 0:
            raise UsageError(f"variable count must be non-negative, got {nvars}")
        cleaned = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise UsageError(f"exponent vector {mono} does not have length {nvars}")
            if any(e < 0 for e in mono):
                raise UsageError(f"negative exponent in {mono}")
            if isinstance(coeff, (int, str)):
                coeff = to_rational(coeff)
            if coeff != 0:
                cleaned[mono] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, value, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, mono: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(mono), {tuple(mono): coeff})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise UsageError(f"variable x{index} out of range for {nvars} variables")
        mono = [0] * nvars
        mono[index] = 1
        return cls.monomial(mono)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, object]:
        return MappingProxyType(self._terms)

    def items(self) -> list:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def leading_term(self) -> Tuple[Monomial, object]:
        if not self._terms:
            raise UsageError("zero polynomial has no leading term")
        mono = max(self._terms, key=grlex_key)
        return mono, self._terms[mono]

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise UsageError(f"polynomials live in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self + MultiPoly.constant(other, self.nvars)
        self._check(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            out[mono] = out[mono] + coeff if mono in out else coeff
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, str)):
                other = to_rational(other)
            return MultiPoly(self.nvars, {m: c * other for m, c in self._terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                prod = c1 * c2
                out[mono] = out[mono] + prod if mono in out else prod
        return MultiPoly(self.nvars, out)

    def __rmul__(self, other) -> "MultiPoly":
        return self * other

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise UsageError("negative powers of polynomials are not defined")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- rendering ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.items():
            body = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e
            )
            if isinstance(coeff, Fraction):
                sign = "-" if coeff < 0 else "+"
                mag = abs(coeff)
                text = "" if (mag == 1 and body) else str(mag)
            else:
                sign = "+"
                text = "" if (coeff == 1 and body) else f"({coeff})"
            joined = f"{text}*{body}" if text and body else (text or body)
            pieces.append((sign, joined))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, joined in pieces[1:]:
            out += f" {sign} {joined}"
        return out


def _to_sympy(p: MultiPoly, gens) -> "sp.Poly":
    terms = {mono: sp.Rational(c.numerator, c.denominator) for mono, c in p.terms.items()}
    return sp.Poly.from_dict(terms or {(0,) * p.nvars: 0}, *gens, domain=sp.QQ)


def _from_sympy(p: "sp.Poly", nvars: int) -> MultiPoly:
    return MultiPoly(nvars, {mono: Fraction(int(c.p), int(c.q)) for mono, c in p.terms() if c != 0})


def poly_divmod(f: MultiPoly, g: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    """Divide g by the single divisor f; returns (quotient, remainder).

    Reduction is sympy's `reduced` in graded-lex order with x0 > x1 > ...
    For one divisor the remainder vanishes exactly when f divides g.
    """
    if f.is_zero():
        raise UsageError("division by the zero polynomial")
    f._check(g)
    if f.nvars == 0:
        return MultiPoly.constant(g.terms.get((), 0) / f.terms[()], 0), MultiPoly.zero(0)
    gens = sp.symbols(f"x0:{f.nvars}")
    (quotient,), remainder = sp.reduced(_to_sympy(g, gens), [_to_sympy(f, gens)], *gens, order="grlex", polys=True)
    return _from_sympy(quotient, f.nvars), _from_sympy(remainder, f.nvars)


def poly_divides(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Quotient q with f*q == g when f divides g exactly, else None."""
    quotient, remainder = poly_divmod(f, g)
    return quotient if remainder.is_zero() else None


def poly_power_substitute(f: MultiPoly, q: int) -> MultiPoly:
    """Pull f back along x_i -> x_i^q."""
    if q < 1:
        raise UsageError(f"power map exponent must be >= 1, got {q}")
    return MultiPoly(f.nvars, {tuple(e * q for e in m): c for m, c in f.terms.items()})


def poly_linear_substitute(f: MultiPoly, rows: Sequence[Sequence[object]]) -> MultiPoly:
    """Replace x_j in f by the linear form sum_i rows[j][i] * y_i."""
    if len(rows) != f.nvars:
        raise UsageError(f"need {f.nvars} linear forms, got {len(rows)}")
    width = len(rows[0]) if rows else 0
    forms = [
        MultiPoly(width, {tuple(int(i == k) for k in range(width)): c for i, c in enumerate(row)})
        for row in rows
    ]
    result = MultiPoly.zero(width)
    for mono, coeff in f.terms.items():
        term = MultiPoly.constant(1, width) * coeff
        for form, e in zip(forms, mono):
            if e:
                term = term * (form ** e)
        result = result + term
    return result
