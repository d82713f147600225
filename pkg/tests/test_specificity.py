from fractions import Fraction

import numpy as np
import pytest

import oracles
from conftest import random_distribution
from probposs import DistributionError, TransformSpec
from probposs.specificity import fuzzy_cardinality, specificity_of_transform, subsethood

P3 = [0.6, 0.3, 0.1]


@pytest.mark.parametrize("pi, expected", [([1, 0.7, 0.3], 2.0), ([0, 0, 0], 0.0), ([1], 1.0)])
def test_fuzzy_cardinality(pi, expected):
    assert fuzzy_cardinality(pi) == pytest.approx(expected, abs=1e-15)


def test_subsethood_examples():
    assert subsethood([1, 0.7, 0.3], [1, 0.4, 0.1]) == pytest.approx(0.75, abs=1e-15)
    assert subsethood([0.2, 0.9], [0.2, 0.9]) == 1.0
    assert subsethood([1, 1], [0, 0]) == 0.0


def test_subsethood_errors():
    with pytest.raises(DistributionError):
        subsethood([1, 0.5], [1])
    with pytest.raises(DistributionError):
        subsethood([0, 0], [1, 1])


def test_specificity_frozen_values():
    p = oracles.frac(P3)
    sym = oracles.symmetric(p)
    gen = oracles.generalized(p, 2)
    opt = oracles.optimal(p)
    assert sum(map(min, sym, opt)) / sum(sym) == Fraction(3, 4)
    assert sum(map(min, gen, opt)) / sum(gen) == Fraction(15, 17)

    assert specificity_of_transform(P3, TransformSpec.symmetric()) == pytest.approx(0.75, abs=1e-15)
    assert specificity_of_transform(P3, TransformSpec.generalized(2)) == pytest.approx(15 / 17, abs=1e-15)
    assert specificity_of_transform(P3, TransformSpec.optimal()) == 1.0


def test_specificity_bounds_and_monotonicity(rng):
    ns = [1, 2, 3, 5, 10, 100]
    for _ in range(50):
        p = random_distribution(rng, int(rng.integers(1, 80)), ties=True, zeros=True)
        sym = specificity_of_transform(p, TransformSpec.symmetric())
        values = [specificity_of_transform(p, TransformSpec.generalized(n)) for n in ns]
        assert 0 < sym <= 1
        assert all(0 < v <= 1 for v in values)
        assert np.all(np.diff(values) >= -1e-12)
        assert sym <= values[0] + 1e-12
        assert specificity_of_transform(p, TransformSpec.optimal()) == 1.0


def test_subsethood_one_iff_contained(rng):
    for _ in range(100):
        a = rng.random(6)
        b = rng.random(6)
        assert (subsethood(a, b) == 1.0) == bool(np.all(a <= b))
        assert subsethood(a, np.maximum(a, b)) == 1.0
