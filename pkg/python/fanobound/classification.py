"""
Classification tables and verdict rules for Fano manifolds of large index.

The tables are static data: del Pezzo manifolds by degree, Mukai manifolds
by genus, the finite candidate lists for Picard number >= 2 at middle
index, and the arithmetic lemmas on normal bundles of lines. `verdict`
turns a subject descriptor into a status with exactly one rule citation;
where the computation engines can back the citation the evidence is
attached and the verdict is marked computed.
"""
# this_file: python/fanobound/classification.py

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from .chern import WeightedHypersurface, wps_positivity
from .errors import HypothesisError, ImpossibleIndexError, TableError, UsageError
from .quadric import QuadricForm, decide, pencil_projection

logger = logging.getLogger(__name__)

RULE_MUKAI = "rem-mukai-rho=1"
# Rows taken from the coindex-3 classification tables rather than a quoted rule.
MUKAI_EXTERNAL = "external: Mukai classification"


@dataclass(frozen=True)
class Rule:
    id: str
    quote: str


RULES: Dict[str, Rule] = {
    rule.id: rule
    for rule in (
        Rule("rho=1-dim=4", "X does not admit any non-isomorphic surjective endomorphism"),
        Rule("main-del-pezzo-non", "Let X be a del Pezzo manifold of Picard number 1. Then X does not admit any non-isomorphic surjective endomorphism."),
        Rule("thm-singular-quadric", "X does not admit any non-isomorphic surjective endomorphism if and only if k >= 4"),
        Rule("rem-quadric-totally", "quadric outside the dimension range of the endomorphism criterion"),
        Rule("thm-middle-index", "X is toric if and only if X admits an int-amplified endomorphism"),
        Rule("coro-del-pezzo-bounded", "there is a positive number N such that every finite morphism Y -> X has the degree no more than N"),
        Rule("ques-fourfold-bounded", "is there a positive number N such that every surjective morphism Y -> X has the degree no more than N?"),
        Rule("rem-index=1-dim=4", "If p=0, then l is a smooth rational curve with trivial normal bundle"),
        Rule("mukai-pic=1-dim=4", "Let X be a Mukai fourfold of Picard number 1. Then ... every finite morphism Y -> X has the degree no more than N"),
        Rule("rem-mukai-rho=1", "By the classification of Mukai, it has been shown that 2 <= g <= 12 and g != 11"),
        Rule("cor-usual-hyper", "If either d >= 3, or d = 2 and n >= 3, then ... any finite morphism Y -> X has the degree no more than N"),
        Rule("thm-wps-ci", "Suppose a_0 and a_1 are coprime and d >= a_0+a_1+1"),
        Rule("class-del-pezzo", "Moreover, the Picard number rho(X)=1 if and only if d <= 5"),
        Rule("lem-lines-del", "a_1 >= ... >= a_{n-1} and sum a_i = n-3; each a_i <= 1"),
        Rule("lem-normalbdle-index1", "there is at least one a_i < 0"),
        Rule("lem-mukai-fourfold", "p+2 = -K_X.C = 2H.C <= 5"),
        Rule("lem-index-reduction", "If r > n/2+1, then rho(X)=1"),
        Rule("lem-class-middleindex", "either (i) X = P^2 x P^2 x P^2, or (ii) rho(X)=2"),
        Rule("intro-kobayashi-ochiai", "the index satisfies i(X) <= dim(X)+1"),
        Rule("pro-complete-intersection-bounded", "sum_{j != i} (lambda_j - lambda_i) x_j^2 = 0"),
        Rule("prop-nor-bdle-negative", "D ~ lambda H with lambda >= 2 i(X)"),
        Rule("main-conj-pn", "Suppose that X admits a non-isomorphic surjective endomorphism. Then X is a projective space."),
        Rule("main-ques-toric", "is X toric whenever it admits an int-amplified endomorphism?"),
        Rule("ques-main-bounded-fano", "is there a positive integer N bounding the degree of every surjective morphism Y -> X?"),
        Rule("lem-arv-prop2.1", "there is a positive number N such that deg f <= N for every finite morphism f: X -> Y"),
        Rule("lem-arv-ggg", "deg(f) c_n(Omega_X(uH_X)) <= c_n(Omega_Y(umH_Y)) when Omega_X(uH_X) is globally generated"),
        Rule("lem-wps-gg", "Omega_X(a_0+a_1) is globally generated away from finitely many points"),
        Rule("pro-top-chern-cal", "the top Chern class of Omega_X(a) is the residue at infinity of the generating function"),
        Rule("notation-well-formed", "gcd of any n+1 of the weights is 1 and the hypersurface misses the singular strata"),
    )
}


# ---------------------------------------------------------------------------
# Del Pezzo and Mukai tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DelPezzoEntry:
    n: int
    d: int
    description: str
    wps_model: Optional[WeightedHypersurface] = None
    ci_model: Optional[str] = None

    @property
    def picard_one(self) -> bool:
        return self.d <= 5

    @property
    def very_ample_h(self) -> bool:
        return self.d >= 3


def del_pezzo_lookup(n: int, d: int) -> DelPezzoEntry:
    """Row of the del Pezzo classification for dimension n >= 3 and degree d = H^n."""
    if n < 3:
        raise TableError(f"del Pezzo table covers n >= 3, got n={n}")
    if not 1 <= d <= 7:
        raise TableError(f"del Pezzo degree must satisfy 1 <= d <= 7, got d={d}")
    if d == 1:
        return DelPezzoEntry(n, d, f"sextic in P(3,2,1^{n})", WeightedHypersurface((3, 2) + (1,) * n, 6))
    if d == 2:
        return DelPezzoEntry(n, d, f"quartic in P(2,1^{n + 1})", WeightedHypersurface((2,) + (1,) * (n + 1), 4))
    if d == 3:
        return DelPezzoEntry(n, d, f"cubic hypersurface in P^{n + 1}", WeightedHypersurface.projective(n, 3))
    if d == 4:
        return DelPezzoEntry(
            n, d, f"intersection of two quadrics in P^{n + 2}",
            ci_model=f"complete intersection of two quadrics in P^{n + 2}",
        )
    if d == 5:
        if n > 6:
            raise TableError(f"degree 5 row requires n <= 6, got n={n}")
        return DelPezzoEntry(n, d, f"linear section of Gr(2,5) in P^9 (in P^{n + 3})")
    if d == 6:
        if n > 4:
            raise TableError(f"degree 6 row requires n <= 4, got n={n}")
        if n == 3:
            return DelPezzoEntry(n, d, "P(T_P2) or P1 x P1 x P1")
        return DelPezzoEntry(n, d, "P2 x P2")
    if n != 3:
        raise TableError(f"degree 7 row requires n = 3, got n={n}")
    return DelPezzoEntry(n, d, "blow-up of P3 at a point")


@dataclass(frozen=True)
class ConsistencyReport:
    model: str
    coprime: bool
    degree_ok: bool
    margin: Fraction

    @property
    def holds(self) -> bool:
        return self.coprime and self.degree_ok and self.margin > 0


def _model_consistency(X: WeightedHypersurface) -> ConsistencyReport:
    coprime = math.gcd(X.a0, X.a1) == 1
    degree_ok = X.degree >= X.a0 + X.a1 + 1
    positivity = wps_positivity(X)
    return ConsistencyReport(X.label, coprime, degree_ok, positivity.margin)


def del_pezzo_wps_consistency(n: int, d: int) -> ConsistencyReport:
    if d not in (1, 2, 3):
        raise UsageError(f"weighted models exist for d in {{1, 2, 3}}, got d={d}")
    return _model_consistency(del_pezzo_lookup(n, d).wps_model)


@dataclass(frozen=True)
class MukaiEntry:
    n: int
    g: int
    description: str = ""
    wps_model: Optional[WeightedHypersurface] = None
    source: str = RULE_MUKAI

    def __post_init__(self):
        if not 2 <= self.g <= 12 or self.g == 11:
            raise TableError(f"Mukai genus must satisfy 2 <= g <= 12 and g != 11, got g={self.g}")
        if self.n < 3:
            raise TableError(f"Mukai table covers n >= 3, got n={self.n}")

    @property
    def h_power(self) -> int:
        return 2 * self.g - 2


def mukai_lookup(n: int, g: int) -> MukaiEntry:
    if g == 2:
        return MukaiEntry(n, g, f"sextic in P(3,1^{n + 1})", WeightedHypersurface((3,) + (1,) * (n + 1), 6))
    if g == 3:
        return MukaiEntry(
            n, g, f"quartic in P^{n + 1} or double cover of a quadric", WeightedHypersurface.projective(n, 4)
        )
    if g == 4:
        return MukaiEntry(n, g, f"complete intersection of a quadric and a cubic in P^{n + 2}")
    if g == 5:
        return MukaiEntry(n, g, f"complete intersection of three quadrics in P^{n + 3}", source=MUKAI_EXTERNAL)
    return MukaiEntry(n, g, "linear section of a rational homogeneous variety in most cases", source=MUKAI_EXTERNAL)


def mukai_wps_consistency(n: int, g: int) -> ConsistencyReport:
    if g not in (2, 3):
        raise UsageError(f"weighted models exist for g in {{2, 3}}, got g={g}")
    return _model_consistency(mukai_lookup(n, g).wps_model)


# ---------------------------------------------------------------------------
# Lines and minimal rational curves
# ---------------------------------------------------------------------------


def line_normal_bundle_types(n: int, index: int, lower: int = -1) -> List[Tuple[int, ...]]:
    """Non-increasing vectors of length n-1 with entries in [lower, 1] summing to index-2."""
    if n < 2:
        raise UsageError(f"need n >= 2, got n={n}")
    if lower > 1:
        raise UsageError(f"lower bound {lower} exceeds the upper bound 1")
    length, target = n - 1, index - 2
    found: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...], ceiling: int, remaining: int) -> None:
        slots = length - len(prefix)
        if slots == 0:
            if remaining == 0:
                found.append(prefix)
            return
        for value in range(ceiling, lower - 1, -1):
            rest = remaining - value
            if lower * (slots - 1) <= rest <= value * (slots - 1):
                extend(prefix + (value,), value, rest)

    extend((), 1, target)
    return found


def splitting_types_del_pezzo(n: int) -> List[Tuple[int, ...]]:
    """Normal bundle types of lines on a del Pezzo manifold of dimension n (H very ample)."""
    if n < 3:
        raise UsageError(f"del Pezzo lines need n >= 3, got n={n}")
    return line_normal_bundle_types(n, n - 1)


@dataclass(frozen=True)
class StandardCurve:
    p: int
    valid: bool
    note: str = ""


def standard_p(index: int, h_dot: int, n: Optional[int] = None) -> StandardCurve:
    """p = i(X) * (H.C) - 2 for a standard minimal rational curve C."""
    if index < 1 or h_dot < 1:
        raise UsageError(f"index and H.C must be positive, got {index}, {h_dot}")
    p = index * h_dot - 2
    valid = p >= 0 and (n is None or p <= n - 1)
    note = ""
    if p < 0:
        note = "no standard curve of this degree"
    elif index == 2 and h_dot == 2:
        note = "p = 2 forces a smooth quadric"
    return StandardCurve(p, valid, note)


# ---------------------------------------------------------------------------
# Index arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexFacts:
    n: int
    r: int
    kobayashi_ochiai: Optional[str]
    rho_one_forced: bool
    rho_ge2_candidates: Tuple[str, ...] = ()
    middle_index_cases: Tuple[str, ...] = ()
    rules: Tuple[str, ...] = ()


def index_facts(n: int, r: int) -> IndexFacts:
    if r < 1:
        raise UsageError(f"index must be positive, got {r}")
    if n < 1:
        raise UsageError(f"dimension must be positive, got {n}")
    if r > n + 1:
        raise ImpossibleIndexError(f"index {r} exceeds dim + 1 = {n + 1}", "intro-kobayashi-ochiai")
    rules = ["intro-kobayashi-ochiai"]
    ko = {n + 1: "projective space", n: "smooth quadric"}.get(r)
    rho_one = n >= 3 and 2 * r > n + 2
    candidates: Tuple[str, ...] = ()
    middle: Tuple[str, ...] = ()
    if n >= 3:
        rules.append("lem-index-reduction")
        if 2 * r == n + 2:
            candidates = (f"P^{r - 1} x P^{r - 1}",)
        elif 2 * r == n + 1:
            candidates = (
                f"P_(P^{r})(O(2) + O(1)^{r - 1})",
                f"P_(P^{r})(T_P^{r})",
                f"P^{r - 1} x Q^{r}",
            )
    if n == 2 * r and n >= 6:
        rules.append("lem-class-middleindex")
        cases = ["P^2 x P^2 x P^2"] if r == 3 else []
        cases += [
            f"V_d x P^{r - 1}",
            f"P_(P^{r + 1})(O(2)^2 + O(1)^{r - 2})",
            f"P_(P^{r + 1})(O(3) + O(1)^{r - 1})",
            f"P_(Q^{r + 1})(O(2) + O(1)^{r - 1})",
        ]
        if r == 3:
            cases.append("P_(Q^4)(E(1) + O(1))")
        cases += [
            f"quadric bundle over a base of dimension {r}",
            f"blow-up of Q^{2 * r} along P^{r - 1}",
            f"intersection of two (1,1) divisors in P^{r + 1} x P^{r + 1}",
        ]
        middle = tuple(cases)
    return IndexFacts(n, r, ko, rho_one, candidates, middle, tuple(rules))


@dataclass(frozen=True)
class RamificationResult:
    contradiction_for_all_q: bool
    ramification_at_2: int
    half_pullback_at_2: Fraction
    least_valid_q: Optional[int]


def ramification_contradiction(index: int, lam: int) -> RamificationResult:
    """Whether (q-1) i >= q lambda / 2 fails for every q >= 2."""
    if index < 1 or lam < 1:
        raise UsageError(f"index and lambda must be positive, got {index}, {lam}")
    contradiction = lam >= 2 * index
    least = None
    if not contradiction:
        least = max(2, math.ceil(Fraction(2 * index, 2 * index - lam)))
    return RamificationResult(contradiction, index, Fraction(2 * lam, 2), least)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


class VerdictStatus(str, Enum):
    BOUNDEDNESS_HOLDS = "BoundednessHolds"
    NO_NON_ISO_ENDO = "NoNonIsoEndo"
    ADMITS_ENDO = "AdmitsEndo"
    TORIC_IFF_INT_AMPLIFIED = "ToricIffIntAmplified"
    OPEN_QUESTION = "OpenQuestion"


@dataclass(frozen=True)
class Verdict:
    subject: Mapping[str, Any]
    status: VerdictStatus
    rule: str
    computed: bool = False
    evidence: Mapping[str, Any] = field(default_factory=dict)

    @property
    def quote(self) -> str:
        return RULES[self.rule].quote

    @property
    def basis(self) -> str:
        return "computed" if self.computed else "cited, not computed"


SHAPES = {
    "fano4": ("index",),
    "delpezzo": ("n", "d"),
    "mukai": ("n", "g"),
    "quadric": ("n", "k"),
    "fano": ("n", "index", "rho"),
    "hypersurface": ("n", "d"),
}


def _int_field(subject: Mapping[str, Any], key: str) -> int:
    value = subject.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"descriptor field {key!r} must be an integer, got {value!r}")
    return value


def _verdict_fano4(subject: Mapping[str, Any]) -> Verdict:
    index = _int_field(subject, "index")
    if index > 5:
        raise ImpossibleIndexError(f"a fourfold has index at most 5, got {index}", "intro-kobayashi-ochiai")
    if index < 1:
        raise UsageError(f"index must be positive, got {index}")
    if index == 5:
        return Verdict(subject, VerdictStatus.ADMITS_ENDO, "intro-kobayashi-ochiai", evidence={"model": "P^4"})
    if index > 1:
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "rho=1-dim=4")
    p = subject.get("vmrt_dim")
    if p is None or p == 1:
        return Verdict(subject, VerdictStatus.OPEN_QUESTION, "ques-fourfold-bounded")
    if p == 0:
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "rem-index=1-dim=4")
    if p in (2, 3):
        raise HypothesisError(
            f"VMRT dimension {p} forces a quadric or P^4, impossible at index 1", "rem-index=1-dim=4"
        )
    raise UsageError(f"VMRT dimension of a fourfold lies in 0..3, got {p}")


def _verdict_delpezzo(subject: Mapping[str, Any]) -> Verdict:
    n, d = _int_field(subject, "n"), _int_field(subject, "d")
    entry = del_pezzo_lookup(n, d)
    if not entry.picard_one:
        return Verdict(subject, VerdictStatus.TORIC_IFF_INT_AMPLIFIED, "thm-middle-index", evidence={"model": entry.description})
    if d in (1, 2, 3):
        report = del_pezzo_wps_consistency(n, d)
        return Verdict(
            subject, VerdictStatus.NO_NON_ISO_ENDO, "main-del-pezzo-non", True,
            {"model": report.model, "margin": report.margin},
        )
    if d == 4:
        projected = pencil_projection(list(range(n + 3)), 0)
        return Verdict(
            subject, VerdictStatus.NO_NON_ISO_ENDO, "main-del-pezzo-non", True,
            {"model": entry.description, "projection_rank": projected.rank},
        )
    return Verdict(subject, VerdictStatus.NO_NON_ISO_ENDO, "main-del-pezzo-non", evidence={"model": entry.description})


def _verdict_mukai(subject: Mapping[str, Any]) -> Verdict:
    n, g = _int_field(subject, "n"), _int_field(subject, "g")
    entry = mukai_lookup(n, g)
    if n == 4:
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "mukai-pic=1-dim=4", evidence={"model": entry.description})
    if g in (2, 3):
        report = mukai_wps_consistency(n, g)
        return Verdict(
            subject, VerdictStatus.BOUNDEDNESS_HOLDS, "rem-mukai-rho=1", True,
            {"model": report.model, "margin": report.margin},
        )
    if g == 4:
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "rem-mukai-rho=1", evidence={"model": entry.description})
    return Verdict(subject, VerdictStatus.OPEN_QUESTION, "rem-mukai-rho=1", evidence={"model": entry.description})


def _verdict_quadric(subject: Mapping[str, Any]) -> Verdict:
    return _quadric_verdict(subject, _int_field(subject, "n"), _int_field(subject, "k"))


def _quadric_verdict(subject: Mapping[str, Any], n: int, k: int) -> Verdict:
    endo = decide(QuadricForm.normal(n, k))
    if not endo.admits:
        return Verdict(subject, VerdictStatus.NO_NON_ISO_ENDO, endo.rule, True, {"paper_k": k})
    return Verdict(
        subject, VerdictStatus.ADMITS_ENDO, endo.rule, True,
        {"paper_k": k, "witness": str(endo.witness.form), "map": str(endo.witness.map)},
    )


def _verdict_fano(subject: Mapping[str, Any]) -> Verdict:
    n, index, rho = (_int_field(subject, key) for key in ("n", "index", "rho"))
    if n < 3:
        raise UsageError(f"fano descriptor needs n >= 3, got n={n}")
    if rho < 1:
        raise UsageError(f"Picard number must be positive, got {rho}")
    facts = index_facts(n, index)
    if rho >= 2:
        if facts.rho_one_forced:
            raise HypothesisError(f"index {index} > n/2 + 1 forces Picard number 1", "lem-index-reduction")
        if index >= (n + 1) // 2:
            evidence = {"candidates": list(facts.rho_ge2_candidates or facts.middle_index_cases)}
            return Verdict(subject, VerdictStatus.TORIC_IFF_INT_AMPLIFIED, "thm-middle-index", evidence=evidence)
        return Verdict(subject, VerdictStatus.OPEN_QUESTION, "main-ques-toric")
    if index == n + 1:
        return Verdict(subject, VerdictStatus.ADMITS_ENDO, "intro-kobayashi-ochiai", evidence={"model": f"P^{n}"})
    if index == n:
        return _quadric_verdict(subject, n + 1, n + 1)
    if index == n - 1:
        return Verdict(subject, VerdictStatus.NO_NON_ISO_ENDO, "main-del-pezzo-non")
    if n == 4 and index > 1:
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "rho=1-dim=4")
    return Verdict(subject, VerdictStatus.OPEN_QUESTION, "ques-main-bounded-fano")


def _verdict_hypersurface(subject: Mapping[str, Any]) -> Verdict:
    n, d = _int_field(subject, "n"), _int_field(subject, "d")
    if n < 2 or d < 1:
        raise UsageError(f"hypersurface descriptor needs n >= 2 and d >= 1, got n={n}, d={d}")
    if d >= 3:
        positivity = wps_positivity(WeightedHypersurface.projective(n, d))
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "cor-usual-hyper", True, {"margin": positivity.margin})
    if d == 2 and n >= 3:
        return Verdict(subject, VerdictStatus.BOUNDEDNESS_HOLDS, "cor-usual-hyper")
    if d == 2:
        return _quadric_verdict(subject, n + 1, n + 1)
    return Verdict(subject, VerdictStatus.ADMITS_ENDO, "main-conj-pn", evidence={"model": f"P^{n}"})


_DISPATCH = {
    "fano4": _verdict_fano4,
    "delpezzo": _verdict_delpezzo,
    "mukai": _verdict_mukai,
    "quadric": _verdict_quadric,
    "fano": _verdict_fano,
    "hypersurface": _verdict_hypersurface,
}


def verdict(subject: Mapping[str, Any]) -> Verdict:
    """Status and citation for a descriptor such as {"shape": "delpezzo", "n": 4, "d": 5}."""
    shape = subject.get("shape")
    if shape not in _DISPATCH:
        supported = ", ".join(f"{name}({', '.join(keys)})" for name, keys in SHAPES.items())
        raise UsageError(f"unsupported descriptor shape {shape!r}; supported: {supported}")
    result = _DISPATCH[shape](dict(subject))
    logger.debug("verdict %s -> %s [%s]", shape, result.status.value, result.rule)
    return result


# ---------------------------------------------------------------------------
# Named aliases
# ---------------------------------------------------------------------------

ALIASES = {
    "cubic3fold": lambda: del_pezzo_lookup(3, 3).wps_model,
    "quintic3fold": lambda: WeightedHypersurface.projective(3, 5),
    "quartic-k3": lambda: WeightedHypersurface.projective(2, 4),
    "cubic-surface": lambda: WeightedHypersurface.projective(2, 3),
    "quadric-surface": lambda: WeightedHypersurface.projective(2, 2),
}

_PARAM = re.compile(r"^(delpezzo|mukai):n=(\d+),(d|g)=(\d+)$")
_WPS = re.compile(r"^wps:([\d,\s]+)/(\d+)$")


def resolve_alias(name: str) -> WeightedHypersurface:
    """Hypersurface named by an alias, a table row ("delpezzo:n=3,d=1") or "wps:3,2,1,1,1/6"."""
    key = name.strip()
    if key in ALIASES:
        return ALIASES[key]()
    match = _PARAM.match(key)
    if match:
        family, n, letter, value = match.group(1), int(match.group(2)), match.group(3), int(match.group(4))
        if (family == "delpezzo") != (letter == "d"):
            raise UsageError(f"alias {name!r} mixes table and parameter names")
        entry = del_pezzo_lookup(n, value) if family == "delpezzo" else mukai_lookup(n, value)
        if entry.wps_model is None:
            raise UsageError(f"table row {name!r} has no weighted hypersurface model")
        return entry.wps_model
    match = _WPS.match(key)
    if match:
        return WeightedHypersurface.parse(match.group(1), int(match.group(2)))
    known = ", ".join(sorted(ALIASES))
    raise UsageError(f"unknown alias {name!r}; known: {known}, delpezzo:n=N,d=D, mukai:n=N,g=G, wps:W/D")
