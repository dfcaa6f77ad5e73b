"""Minimum-distance bounds for cyclic codes via non-zero-locator codes."""
from .bounds import (
    DEFAULT_FAMILIES,
    LocatorFamilies,
    bch_bound,
    compute_bounds,
    ht_bound,
    ht_bound_normalized,
    nzl_bound,
    nzl_search,
    parity_bound_formula,
    prop1_improves,
    rs_bound_formula,
    synth_ht_pattern,
)
from .cyclic_code import (
    CyclicCode,
    DefiningSet,
    build_code,
    code_from_defining_set,
    parity_check_locator,
    rs_code,
)
from .finite_field import FieldElement, FieldSpec, build_field
from .oracle import min_distance_brute, verify_definition2
from .polynomial import Poly

__version__ = "0.1.0"

__all__ = [
    "CyclicCode",
    "DEFAULT_FAMILIES",
    "DefiningSet",
    "FieldElement",
    "FieldSpec",
    "LocatorFamilies",
    "Poly",
    "bch_bound",
    "build_code",
    "build_field",
    "code_from_defining_set",
    "compute_bounds",
    "ht_bound",
    "ht_bound_normalized",
    "min_distance_brute",
    "nzl_bound",
    "nzl_search",
    "parity_bound_formula",
    "parity_check_locator",
    "prop1_improves",
    "rs_bound_formula",
    "rs_code",
    "synth_ht_pattern",
    "verify_definition2",
]
