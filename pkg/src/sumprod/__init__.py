"""Exact arithmetic for sum sets, product sets, additive energy,
multiplicative dimension, and the inequality checkers built on them."""

from .limits import (
    CapExceeded,
    FactorizationBudgetExceeded,
    SetParseError,
    size_cap,
)
from .exactset import (
    FinSet,
    PairGraph,
    Rat,
    box_sum,
    combine,
    dilate,
    iterate,
    parse_set,
    restricted_combine,
    simple_closure,
    sum_diff,
)
from .arith import (
    ExponentMatrix,
    MultDim,
    exponent_matrix,
    factor_fraction,
    factor_int,
    first_primes,
    is_prime,
    mult_dim,
    vector_simple_sum_count,
)
from .verdicts import Enclosure, Verdict, compare, log_of, power_of
from .energy import (
    LayerDecomposition,
    RepCounts,
    WeightVector,
    energy,
    layer_inequality_check,
    layer_partition,
    quadrature_energy,
    rep_counts,
    tail_monotonicity_check,
    weighted_energy,
)
from .progressions import (
    ContainsResult,
    ProgressionDesc,
    contains,
    dim_chain_check,
    enumerate_progression,
    is_proper,
    parse_progression,
)
from .theorems import (
    beta,
    dim_budget_diagnostic,
    fold_constant,
    verify_intro_suite,
    verify_lemma3,
    verify_prop9,
    verify_prop10,
    verify_prop11,
    verify_prop13,
    verify_ruzsa,
    verify_theorem1,
    verify_theorem3_chain,
)
from .extremal import (
    ExampleSpec,
    SearchResult,
    es_example,
    f_value,
    g_value,
    search_min,
    verify_section3,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "ContainsResult",
    "Enclosure",
    "ExampleSpec",
    "ExponentMatrix",
    "FactorizationBudgetExceeded",
    "FinSet",
    "LayerDecomposition",
    "MultDim",
    "PairGraph",
    "ProgressionDesc",
    "Rat",
    "RepCounts",
    "SearchResult",
    "SetParseError",
    "Verdict",
    "WeightVector",
    "beta",
    "box_sum",
    "combine",
    "compare",
    "contains",
    "dilate",
    "dim_budget_diagnostic",
    "dim_chain_check",
    "energy",
    "enumerate_progression",
    "es_example",
    "exponent_matrix",
    "f_value",
    "factor_fraction",
    "factor_int",
    "first_primes",
    "fold_constant",
    "g_value",
    "is_prime",
    "is_proper",
    "iterate",
    "layer_inequality_check",
    "layer_partition",
    "log_of",
    "mult_dim",
    "parse_progression",
    "parse_set",
    "power_of",
    "quadrature_energy",
    "rep_counts",
    "restricted_combine",
    "search_min",
    "simple_closure",
    "size_cap",
    "sum_diff",
    "tail_monotonicity_check",
    "vector_simple_sum_count",
    "verify_intro_suite",
    "verify_lemma3",
    "verify_prop9",
    "verify_prop10",
    "verify_prop11",
    "verify_prop13",
    "verify_ruzsa",
    "verify_section3",
    "verify_theorem1",
    "verify_theorem3_chain",
    "weighted_energy",
]
