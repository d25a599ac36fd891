"""
fanobound - exact Chern numbers, degree bounds and endomorphism verdicts

Twisted cotangent Chern classes of weighted projective hypersurfaces,
the degree bound for finite morphisms between Picard-number-one Fano
manifolds, and the endomorphism criterion for quadrics, all in exact
rational arithmetic.

## Quick Start

```python
from fanobound import WeightedHypersurface, total_chern_series, wps_positivity

cubic = WeightedHypersurface((1, 1, 1, 1, 1), 3)
total_chern_series(cubic, 2).top    # Fraction(10, 1)
wps_positivity(cubic).margin        # Fraction(2, 1)
```
"""
# this_file: python/fanobound/__init__.py

__version__ = "0.1.0"

from .bound import BoundResult, BoundStatus, VarietyInvariants, arv_inequality_check, degree_bound, lhs_constant
from .chern import (
    ChernReport,
    GlobalGeneration,
    WeightedHypersurface,
    chern_numbers,
    euler_characteristic,
    g_value,
    gg_classify,
    hyperplane_power,
    residue_sum_check,
    top_chern_residue,
    total_chern_series,
    twisted_chern_report,
    validate,
    variety_invariants,
    whitney_twist_coefficient,
    wps_positivity,
)
from .classification import (
    del_pezzo_lookup,
    del_pezzo_wps_consistency,
    index_facts,
    mukai_lookup,
    ramification_contradiction,
    splitting_types_del_pezzo,
    standard_p,
    verdict,
)
from .errors import FanoboundError, HypothesisError, UsageError
from .exact import MultiPoly, TruncSeries, poly_divides, poly_power_substitute, series_inv, series_mul
from .quadric import MonomialMap, QuadricForm, decide, paper_k, pencil_projection, verify_invariance, witness_for_k

__all__ = [
    "BoundResult",
    "BoundStatus",
    "ChernReport",
    "FanoboundError",
    "GlobalGeneration",
    "HypothesisError",
    "MonomialMap",
    "MultiPoly",
    "QuadricForm",
    "TruncSeries",
    "UsageError",
    "VarietyInvariants",
    "WeightedHypersurface",
    "arv_inequality_check",
    "chern_numbers",
    "decide",
    "degree_bound",
    "del_pezzo_lookup",
    "del_pezzo_wps_consistency",
    "euler_characteristic",
    "g_value",
    "gg_classify",
    "hyperplane_power",
    "index_facts",
    "lhs_constant",
    "mukai_lookup",
    "paper_k",
    "pencil_projection",
    "poly_divides",
    "poly_power_substitute",
    "ramification_contradiction",
    "residue_sum_check",
    "series_inv",
    "series_mul",
    "splitting_types_del_pezzo",
    "standard_p",
    "top_chern_residue",
    "total_chern_series",
    "twisted_chern_report",
    "validate",
    "variety_invariants",
    "verdict",
    "verify_invariance",
    "whitney_twist_coefficient",
    "witness_for_k",
    "wps_positivity",
    "__version__",
]
