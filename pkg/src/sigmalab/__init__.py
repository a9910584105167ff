"""Exact finite-probability lab.

Sub-sigma-fields of a finite probability space form a lattice under
refinement; this package computes with that lattice in exact rational
arithmetic: conditional-expectation projections, independence and
commutation, tensor factorizations, noise-type Boolean algebras with
their closures and completions, and scenario reproductions of the
classic convergence pathologies on dyadic towers.
"""
from .space import (
    Event,
    ProductSpace,
    Space,
    as_rational,
    event,
    event_prob,
    new_space,
    product_space,
    uniform_space,
)
from .lattice import (
    ENUMERATION_CAP,
    FieldSequence,
    ModularityReport,
    SigmaField,
    bottom,
    check_modularity,
    enumerate_lattice,
    find_pentagons,
    from_blocks,
    generated_by,
    inf_family,
    join,
    leq,
    liminf_seq,
    limsup_seq,
    meet,
    sup_family,
    top,
)
from .operators import (
    CondExp,
    NotTypeL2,
    Vec,
    commutes,
    cond_exp,
    field_of_subspace,
    indicator,
    inner,
    liminf_subsequence,
    ones,
    op_distance,
    op_distance_profile,
    check_projection_product,
    project,
    projection_product,
    vec,
)
from .independence import (
    IndependenceEquivalence,
    IndependentPair,
    SplitResult,
    TensorFactorReport,
    check_independence_equivalence,
    check_restriction_homomorphism,
    check_tensor_intersection,
    embed,
    is_independent,
    split,
    tensor_factor_check,
)
from .noise import (
    AlgebraCandidate,
    ClosureSet,
    CompletionCrossCheck,
    EXHAUSTIVE_SEARCH_CAP,
    NoiseViolation,
    check_completion_maximality,
    check_de_morgan,
    check_mixed_distributivity,
    check_projection_products,
    check_splitting,
    closure,
    completion,
    validate_noise_type,
)
from .scenarios import (
    COIN_NOISE_CAP,
    ScenarioAssertion,
    ScenarioReport,
    Tower,
    Trajectory,
    build_coin_noise,
    coin_field,
    coin_subsets,
    dyadic_space,
    lift_once,
    pentagon_fields,
    reflection_field,
    run_coin_scenario,
    run_join_pathology,
    run_meet_pathology,
    run_pentagon_scenario,
    run_scenario,
    SCENARIOS,
    shift_invariant_field,
)
from .suite import SuiteResult, run_suite, suite_item_names

__version__ = "0.1.0"

__all__ = [
    "AlgebraCandidate",
    "COIN_NOISE_CAP",
    "ClosureSet",
    "CompletionCrossCheck",
    "CondExp",
    "ENUMERATION_CAP",
    "EXHAUSTIVE_SEARCH_CAP",
    "Event",
    "FieldSequence",
    "IndependenceEquivalence",
    "IndependentPair",
    "ModularityReport",
    "NoiseViolation",
    "NotTypeL2",
    "ProductSpace",
    "SCENARIOS",
    "ScenarioAssertion",
    "ScenarioReport",
    "SigmaField",
    "Space",
    "SplitResult",
    "SuiteResult",
    "TensorFactorReport",
    "Tower",
    "Trajectory",
    "Vec",
    "as_rational",
    "bottom",
    "build_coin_noise",
    "check_completion_maximality",
    "check_de_morgan",
    "check_independence_equivalence",
    "check_mixed_distributivity",
    "check_modularity",
    "check_projection_product",
    "check_projection_products",
    "check_restriction_homomorphism",
    "check_splitting",
    "check_tensor_intersection",
    "closure",
    "coin_field",
    "coin_subsets",
    "commutes",
    "completion",
    "cond_exp",
    "dyadic_space",
    "embed",
    "enumerate_lattice",
    "event",
    "event_prob",
    "field_of_subspace",
    "find_pentagons",
    "from_blocks",
    "generated_by",
    "indicator",
    "inf_family",
    "inner",
    "is_independent",
    "join",
    "leq",
    "lift_once",
    "liminf_seq",
    "liminf_subsequence",
    "limsup_seq",
    "meet",
    "new_space",
    "ones",
    "op_distance",
    "op_distance_profile",
    "pentagon_fields",
    "product_space",
    "project",
    "projection_product",
    "reflection_field",
    "run_coin_scenario",
    "run_join_pathology",
    "run_meet_pathology",
    "run_pentagon_scenario",
    "run_scenario",
    "run_suite",
    "shift_invariant_field",
    "split",
    "suite_item_names",
    "sup_family",
    "tensor_factor_check",
    "top",
    "uniform_space",
    "validate_noise_type",
    "vec",
]
