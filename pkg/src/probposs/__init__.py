"""Discrete probability/possibility transformations and specificity."""
from .core import (
    DistributionError,
    OutcomeSubset,
    PossibilityDistribution,
    ProbabilityDistribution,
    possibility_measure,
    probability_measure,
    validate_probability,
)
from .transforms import (
    INF,
    TransformKind,
    TransformSpec,
    apply_transform,
    transform_generalized,
    transform_generalized_fast,
    transform_optimal,
    transform_symmetric,
    transform_weak_order,
)
from .specificity import fuzzy_cardinality, specificity_of_transform, subsethood
from .converse import (
    SolveReport,
    SolverConfig,
    converse_generalized,
    converse_optimal,
    converse_symmetric,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    Sampler,
    emit_binary_curve,
    emit_ternary_map,
    run_specificity_experiment,
    sample_empirical,
    zipf_weights,
)

__version__ = "0.1.0"
