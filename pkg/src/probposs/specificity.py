"""Fuzzy cardinality, Kosko subsethood and transform specificity."""
from __future__ import annotations

import numpy as np

from .core import DistributionError, as_possibility, validate_probability
from .transforms import TransformSpec, apply_transform, transform_optimal


def fuzzy_cardinality(pi) -> float:
    """Sigma-count: the sum of membership degrees."""
    return float(as_possibility(pi).values.sum())


def subsethood(a, b) -> float:
    """Degree to which fuzzy set ``a`` is contained in ``b``.

    ``sum(min(a, b)) / sum(a)``, with intersection fixed to the minimum.
    """
    a = as_possibility(a).values
    b = as_possibility(b).values
    if a.shape != b.shape:
        raise DistributionError(f"length mismatch: {a.size} vs {b.size}")
    card = a.sum()
    if card <= 0:
        raise DistributionError("subsethood of an empty fuzzy set is undefined")
    return float(np.minimum(a, b).sum() / card)


def specificity_of_transform(p, spec: TransformSpec) -> float:
    """How much of ``apply_transform(p, spec)`` lies inside the optimal transform of ``p``.

    Returns a value in (0, 1]; the optimal transform itself scores 1.
    """
    p = validate_probability(p)
    return subsethood(apply_transform(p, spec), transform_optimal(p))
