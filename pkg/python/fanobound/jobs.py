"""
Instance files, job dispatch and batch reports.

An instance file is JSON:

    {"version": "1", "jobs": [{"kind": "chern", "variety": "cubic3fold", "twist": 2}, ...]}

Every job is run by `run_job`, which returns the result block or raises a
FanoboundError. `execute` runs a batch on a thread pool, catches errors
per job and returns the entries in input order.
"""
# this_file: python/fanobound/jobs.py

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

from . import __version__
from .bound import RULE_BOUND, RULE_CHERN_INEQUALITY, VarietyInvariants, arv_inequality_check, degree_bound
from .chern import (
    WeightedHypersurface,
    chern_numbers,
    euler_characteristic,
    gg_classify,
    residue_sum_check,
    total_chern_series,
    twisted_chern_report,
    validate,
    variety_invariants,
    wps_positivity,
)
from .classification import (
    del_pezzo_lookup,
    del_pezzo_wps_consistency,
    index_facts,
    line_normal_bundle_types,
    mukai_lookup,
    mukai_wps_consistency,
    ramification_contradiction,
    resolve_alias,
    splitting_types_del_pezzo,
    standard_p,
    verdict,
)
from .errors import FanoboundError, FormulaInapplicableError, HypothesisError, ParseError, UsageError
from .exact import to_rational
from .identities import GridBounds, check_identities
from .quadric import QuadricForm, decide, diagonal_to_normal_form, pencil_projection
from .report import REPORT_VERSION

logger = logging.getLogger(__name__)

KINDS = ("chern", "positivity", "bound", "quadric", "classify", "identity-check")
ENGINE = f"fanobound {__version__}"

STATUS_EXIT = {"ok": 0, "usage-error": 1, "hypothesis-error": 2, "counterexample": 3}


@dataclass(frozen=True)
class Job:
    index: int
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class InstanceFile:
    version: str
    jobs: Tuple[Job, ...]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_instance(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"instance file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("instance file must be an object with 'version' and 'jobs'")
    version = str(data.get("version", ""))
    if version != REPORT_VERSION:
        raise ParseError(f"unsupported instance version {version!r}; expected {REPORT_VERSION!r}")
    raw_jobs = data.get("jobs")
    if not isinstance(raw_jobs, list):
        raise ParseError("'jobs' must be a list")
    jobs = []
    for index, raw in enumerate(raw_jobs):
        if not isinstance(raw, dict):
            raise ParseError("job must be an object", index)
        kind = raw.get("kind")
        if kind not in KINDS:
            raise ParseError(f"unknown job kind {kind!r}; expected one of {', '.join(KINDS)}", index)
        params = {k: v for k, v in raw.items() if k != "kind"}
        _reject_floats(params, index)
        if kind == "quadric" and "pencil" in params and not isinstance(params["pencil"], dict):
            raise ParseError("'pencil' must be an object with 'lambdas' and 'index'", index)
        jobs.append(Job(index, kind, params))
    return InstanceFile(version, tuple(jobs))


def load_instance(path: Union[str, Path]) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read instance file {path}: {exc}") from exc
    return parse_instance(text)


def _reject_floats(value: Any, index: int) -> None:
    if isinstance(value, float):
        raise ParseError(f"inexact number {value!r}; write rationals as 'p/q' strings", index)
    if isinstance(value, dict):
        for item in value.values():
            _reject_floats(item, index)
    elif isinstance(value, list):
        for item in value:
            _reject_floats(item, index)


def _int(params: Mapping[str, Any], key: str, default: Any = None) -> int:
    value = params.get(key, default)
    if value is None:
        raise UsageError(f"missing integer parameter {key!r}")
    if isinstance(value, bool):
        raise UsageError(f"parameter {key!r} must be an integer, got {value!r}")
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError as exc:
            raise ParseError(f"parameter {key!r} must be an integer, got {value!r}") from exc
    if not isinstance(value, int):
        raise UsageError(f"parameter {key!r} must be an integer, got {value!r}")
    return value


def _weights(value: Any) -> Tuple[int, ...]:
    if isinstance(value, str):
        return WeightedHypersurface.parse(value, 1).weights
    if isinstance(value, list) and all(isinstance(w, int) and not isinstance(w, bool) for w in value):
        return tuple(value)
    raise UsageError(f"weights must be a list of integers or 'a,b,c', got {value!r}")


def hypersurface_from(params: Mapping[str, Any]) -> WeightedHypersurface:
    """X from {"variety": alias} or {"weights": ..., "degree": d}."""
    if "variety" in params:
        return resolve_alias(str(params["variety"]))
    if "weights" in params:
        return WeightedHypersurface(_weights(params["weights"]), _int(params, "degree"))
    raise UsageError("expected 'variety' or 'weights' and 'degree'")


def invariants_from(ref: Any) -> VarietyInvariants:
    """Bound-engine input from an alias, a hypersurface object or inline invariants."""
    if isinstance(ref, str):
        return variety_invariants(resolve_alias(ref))
    if isinstance(ref, dict):
        if "dimension" in ref:
            return VarietyInvariants.from_values(
                _int(ref, "dimension"),
                ref.get("h_power"),
                [to_rational(c) for c in ref.get("chern_numbers", [])],
                str(ref.get("label", "")),
            )
        return variety_invariants(hypersurface_from(ref))
    raise UsageError(f"cannot read variety reference {ref!r}")


# ---------------------------------------------------------------------------
# Per-kind runners; each returns (result, rules)
# ---------------------------------------------------------------------------


def _run_chern(params: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    X = hypersurface_from(params)
    twist = _int(params, "twist", 0)
    check = validate(X, strict_paper_mode=bool(params.get("strict", False)))
    if params.get("strict") and not check.ok:
        raise HypothesisError(f"{X.label}: {'; '.join(check.problems)}", "thm-wps-ci")
    result: Dict[str, Any] = {
        "variety": X.label,
        "weights": list(X.weights),
        "degree": X.degree,
        "dimension": X.dimension,
        "validation": {"well_formed": check.well_formed, "paper_mode": check.paper_mode, "problems": list(check.problems)},
        "twist": twist,
    }
    if X.is_well_formed:
        report = twisted_chern_report(X, twist)
        result.update(
            series=report.series,
            top_coefficient=report.top_coefficient,
            h_power=report.h_power,
            top_number=report.top_number,
            chern_numbers=list(chern_numbers(X)),
            euler_characteristic=euler_characteristic(X),
        )
    else:
        series = total_chern_series(X, twist)
        result.update(
            series=series, top_coefficient=series.top, h_power=None, top_number=None,
            chern_numbers=None, euler_characteristic=None,
        )
    if not X.is_paper_mode:
        result["residues"] = None
        result["residue_note"] = "closed form holds only for weights (a_0, a_1, 1, ..., 1) with gcd(a_0, a_1) = 1"
    else:
        try:
            residues = residue_sum_check(X, twist)
            result["residues"] = {
                "infinity": residues.res_infinity,
                "twist_pole": residues.res_twist_pole,
                "twist_zero": residues.res_twist_zero,
                "zero": residues.res_zero,
                "sum": residues.total,
            }
        except FormulaInapplicableError as exc:
            result["residues"] = None
            result["residue_note"] = str(exc)
    return result, ["pro-top-chern-cal"]


def _run_positivity(params: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    X = hypersurface_from(params)
    positivity = wps_positivity(X)
    result = {
        "variety": X.label,
        "twist": positivity.twist,
        "top_coefficient": positivity.top_coefficient,
        "threshold": positivity.threshold,
        "margin": positivity.margin,
        "margin_number": positivity.margin_number,
        "holds": positivity.holds,
        "global_generation": gg_classify(X),
    }
    return result, ["thm-wps-ci", "lem-wps-gg"]


def _run_bound(params: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    if "x" not in params or "y" not in params:
        raise UsageError("bound jobs need 'x' and 'y'")
    X, Y = invariants_from(params["x"]), invariants_from(params["y"])
    u = _int(params, "u")
    bound = degree_bound(X, Y, u)
    result: Dict[str, Any] = {
        "x": X.label,
        "y": Y.label,
        "u": u,
        "status": bound.status,
        "lhs_constant": bound.lhs_constant,
        "m_max": bound.m_max,
        "degree_bound": bound.degree_bound,
        "degree_bound_exact": bound.degree_bound_exact,
        "feasible": list(bound.feasible),
        "cap": bound.cap,
        "cauchy_bound": bound.cauchy_bound,
        "lhs_poly": list(bound.lhs_poly),
        "rhs_poly": list(bound.rhs_poly),
        "scan": [{"m": p.m, "lhs": p.lhs, "rhs": p.rhs, "feasible": p.feasible} for p in bound.scan],
        "global_generation": bound.gg_basis,
    }
    rules = [RULE_BOUND]
    if "m" in params or "deg" in params:
        m, deg = _int(params, "m"), _int(params, "deg")
        result["inequality_check"] = {"m": m, "deg": deg, "holds": arv_inequality_check(X, Y, u, m, deg)}
        rules.append(RULE_CHERN_INEQUALITY)
    return result, rules


def _quadric_from(params: Mapping[str, Any]) -> Tuple[QuadricForm, List[str]]:
    if "matrix" in params:
        rows = params["matrix"]
        if not isinstance(rows, list) or not rows:
            raise UsageError("'matrix' must be a non-empty list of rows")
        return QuadricForm(len(rows) - 1, tuple(tuple(to_rational(v) for v in row) for row in rows)), []
    if "pencil" in params:
        pencil = params["pencil"]
        if not isinstance(pencil, dict):
            raise UsageError("'pencil' must be an object with 'lambdas' and 'index'")
        lambdas = [to_rational(v) for v in pencil.get("lambdas", [])]
        return pencil_projection(lambdas, _int(pencil, "index")), ["pro-complete-intersection-bounded"]
    return QuadricForm.normal(_int(params, "ambient_dim"), _int(params, "paper_k")), []


def _run_quadric(params: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    Q, rules = _quadric_from(params)
    q = _int(params, "q", 2)
    endo = decide(Q, q)
    result: Dict[str, Any] = {
        "ambient_dim": Q.ambient_dim,
        "form": Q.to_poly(),
        "paper_k": endo.paper_k,
        "rank": endo.paper_k + 1,
        "singular_locus_dim": Q.singular_locus_dim,
        "admits": endo.admits,
        "in_theorem_range": endo.in_theorem_range,
        "rule": endo.rule,
        "witness": None,
        "certificate": {
            "invariant": endo.certificate.invariant,
            "quotient": endo.certificate.quotient,
            "remainder": endo.certificate.remainder,
        },
    }
    if endo.witness is not None:
        w = endo.witness
        result["witness"] = {
            "form": w.form,
            "map": str(w.map),
            "exponent": w.map.exponent,
            "degree": w.degree,
            "per_component": w.per_component,
            "non_reduced": w.non_reduced,
            "description": w.description,
        }
    if params.get("normal_form") and 1 <= endo.paper_k <= 3:
        substitution = diagonal_to_normal_form(endo.paper_k)
        result["normal_form"] = {
            "rules": list(substitution.rules),
            "target": substitution.target,
            "verified": substitution.verify(),
        }
    return result, rules + [endo.rule]


def _run_classify(params: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    op = params.get("op", "verdict")
    if op == "verdict":
        subject = params.get("subject")
        if not isinstance(subject, dict):
            raise UsageError("classify verdict needs a 'subject' object")
        v = verdict(subject)
        return {"status": v.status, "rule": v.rule, "quote": v.quote, "basis": v.basis, "evidence": dict(v.evidence)}, [v.rule]
    if op == "delpezzo":
        n, d = _int(params, "n"), _int(params, "d")
        entry = del_pezzo_lookup(n, d)
        result = {
            "n": n, "d": d, "description": entry.description,
            "wps_model": entry.wps_model.label if entry.wps_model else None,
            "ci_model": entry.ci_model,
            "picard_one": entry.picard_one, "very_ample_h": entry.very_ample_h,
        }
        if d in (1, 2, 3):
            consistency = del_pezzo_wps_consistency(n, d)
            result["consistency"] = {"coprime": consistency.coprime, "degree_ok": consistency.degree_ok, "margin": consistency.margin}
        return result, ["class-del-pezzo"]
    if op == "mukai":
        n, g = _int(params, "n"), _int(params, "g")
        entry = mukai_lookup(n, g)
        result = {"n": n, "g": g, "description": entry.description, "h_power": entry.h_power, "source": entry.source}
        if g in (2, 3):
            result["margin"] = mukai_wps_consistency(n, g).margin
        return result, ["rem-mukai-rho=1"]
    if op == "splitting-types":
        n = _int(params, "n")
        if "index" in params:
            types = line_normal_bundle_types(n, _int(params, "index"), _int(params, "lower", -1))
            return {"n": n, "types": [list(t) for t in types]}, ["lem-normalbdle-index1"]
        return {"n": n, "types": [list(t) for t in splitting_types_del_pezzo(n)]}, ["lem-lines-del"]
    if op == "standard-p":
        n = params.get("n")
        curve = standard_p(_int(params, "index"), _int(params, "h_dot"), None if n is None else _int(params, "n"))
        return {"p": curve.p, "valid": curve.valid, "note": curve.note}, ["lem-mukai-fourfold"]
    if op == "index-facts":
        facts = index_facts(_int(params, "n"), _int(params, "r"))
        return {
            "kobayashi_ochiai": facts.kobayashi_ochiai,
            "rho_one_forced": facts.rho_one_forced,
            "rho_ge2_candidates": list(facts.rho_ge2_candidates),
            "middle_index_cases": list(facts.middle_index_cases),
        }, list(facts.rules)
    if op == "ramification":
        r = ramification_contradiction(_int(params, "index"), _int(params, "lambda"))
        return {
            "contradiction_for_all_q": r.contradiction_for_all_q,
            "ramification_at_2": r.ramification_at_2,
            "half_pullback_at_2": r.half_pullback_at_2,
            "least_valid_q": r.least_valid_q,
        }, ["prop-nor-bdle-negative"]
    raise UsageError(
        f"unknown classify op {op!r}; expected verdict, delpezzo, mukai, splitting-types, standard-p, index-facts, ramification"
    )


def grid_from(params: Mapping[str, Any]) -> GridBounds:
    keys = ("max_a0", "max_n", "max_d", "g_max_a", "g_max_n", "g_max_x")
    kwargs: Dict[str, Any] = {key: _int(params, key) for key in keys if key in params}
    if "twists" in params:
        twists = params["twists"]
        if not isinstance(twists, list):
            raise UsageError("'twists' must be a list of integers")
        kwargs["twists"] = tuple(_int({"t": t}, "t") for t in twists)
    if "diagonal_only" in params:
        kwargs["diagonal_only"] = bool(params["diagonal_only"])
    return GridBounds(**kwargs)


def _run_identity_check(params: Mapping[str, Any]) -> Tuple[Dict[str, Any], List[str]]:
    outcome = check_identities(grid_from(params))
    result = {
        "bounds": outcome.bounds,
        "suites": {name: {"checked": c.checked, "failed": c.failed, "skipped": c.skipped} for name, c in outcome.suites.items()},
        "counterexample": outcome.counterexample,
        "ok": outcome.ok,
    }
    return result, ["pro-top-chern-cal", "thm-wps-ci"]


_RUNNERS = {
    "chern": _run_chern,
    "positivity": _run_positivity,
    "bound": _run_bound,
    "quadric": _run_quadric,
    "classify": _run_classify,
    "identity-check": _run_identity_check,
}


def run_job(job: Job) -> Dict[str, Any]:
    """Report entry for one job; engine errors propagate."""
    result, rules = _RUNNERS[job.kind](job.params)
    status = "ok"
    if job.kind == "identity-check" and not result["ok"]:
        status = "counterexample"
    return {
        "index": job.index,
        "kind": job.kind,
        "status": status,
        "input": dict(job.params),
        "result": result,
        "provenance": {"rules": sorted(set(rules)), "engine": ENGINE},
    }


def _run_guarded(job: Job) -> Dict[str, Any]:
    try:
        return run_job(job)
    except FanoboundError as exc:
        status = "hypothesis-error" if isinstance(exc, HypothesisError) else "usage-error"
        logger.warning("job %d (%s) failed: %s", job.index, job.kind, exc)
        return {
            "index": job.index,
            "kind": job.kind,
            "status": status,
            "input": dict(job.params),
            "error": str(exc),
            "provenance": {"rules": [exc.rule] if getattr(exc, "rule", None) else [], "engine": ENGINE},
        }


def execute(jobs: Sequence[Job], workers: int = 1) -> Dict[str, Any]:
    """Run jobs concurrently; entries come back in input order."""
    if workers < 1:
        raise UsageError(f"worker count must be positive, got {workers}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        entries = list(pool.map(_run_guarded, jobs))
    return {"version": REPORT_VERSION, "engine": ENGINE, "jobs": entries}


def batch_exit_code(report: Mapping[str, Any]) -> int:
    return max((STATUS_EXIT[entry["status"]] for entry in report["jobs"]), default=0)
