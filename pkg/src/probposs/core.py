"""Distribution value types and the set measures they induce.

Outcomes are anonymous 0-based positions; labels belong to the IO layer.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

SUM_TOLERANCE = 1e-9
RENORMALIZE_BAND = (0.999, 1.001)
NORMALIZED_TOLERANCE = 1e-12


class DistributionError(ValueError):
    """Raised when a vector cannot represent the requested distribution."""


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise DistributionError(f"expected a 1-d vector, got shape {arr.shape}")
    if arr.size == 0:
        raise DistributionError("empty vector")
    if not np.all(np.isfinite(arr)):
        raise DistributionError("vector contains non-finite values")
    arr.setflags(write=False)
    return arr


class _Vector:
    __slots__ = ()

    def __array__(self, dtype=None, copy=None):
        arr = self._data()
        return arr if dtype is None else arr.astype(dtype)

    def __len__(self) -> int:
        return self._data().size

    def __getitem__(self, i):
        return self._data()[i]

    def __iter__(self):
        return iter(self._data().tolist())

    def tolist(self) -> list[float]:
        return self._data().tolist()


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution(_Vector):
    """Nonnegative masses summing to one (within ``SUM_TOLERANCE``)."""

    masses: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.masses)
        if np.any(arr < 0):
            raise DistributionError("negative mass")
        if np.any(arr > 1 + SUM_TOLERANCE):
            raise DistributionError("mass greater than 1")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise DistributionError(f"masses sum to {total!r}, not 1")
        object.__setattr__(self, "masses", arr)

    def _data(self) -> np.ndarray:
        return self.masses

    @property
    def size(self) -> int:
        return self.masses.size

    def __eq__(self, other):
        if not isinstance(other, ProbabilityDistribution):
            return NotImplemented
        return np.array_equal(self.masses, other.masses)

    def __repr__(self):
        return f"ProbabilityDistribution({self.masses.tolist()!r})"


@dataclass(frozen=True, eq=False)
class PossibilityDistribution(_Vector):
    """Possibility degrees in [0, 1]; ``normalized`` additionally pins max to 1."""

    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        arr = _frozen(self.values)
        if np.any(arr < 0) or np.any(arr > 1):
            raise DistributionError("possibility values must lie in [0, 1]")
        if self.normalized and abs(arr.max() - 1.0) > NORMALIZED_TOLERANCE:
            raise DistributionError(f"max possibility is {arr.max()!r}, expected 1")
        object.__setattr__(self, "values", arr)

    def _data(self) -> np.ndarray:
        return self.values

    @property
    def size(self) -> int:
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, PossibilityDistribution):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"PossibilityDistribution({self.values.tolist()!r})"


@dataclass(frozen=True)
class OutcomeSubset:
    """A set of outcome positions, checked against the distribution size on use."""

    members: frozenset[int]

    def __init__(self, members: Iterable[int]):
        members = list(members)
        if len(set(members)) != len(members):
            raise DistributionError("duplicate outcome index")
        for m in members:
            if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
                raise DistributionError(f"outcome index {m!r} is not an integer")
        object.__setattr__(self, "members", frozenset(int(m) for m in members))

    def indices(self, size: int) -> np.ndarray:
        idx = np.array(sorted(self.members), dtype=int)
        if idx.size and (idx[0] < 0 or idx[-1] >= size):
            raise DistributionError(f"outcome index out of range for {size} outcomes")
        return idx

    def __len__(self) -> int:
        return len(self.members)


def validate_probability(raw, renormalize: bool = False) -> ProbabilityDistribution:
    """Build a :class:`ProbabilityDistribution` from raw masses.

    With ``renormalize`` set, sums inside ``RENORMALIZE_BAND`` are divided
    through; anything further from 1 is still rejected.
    """
    if isinstance(raw, ProbabilityDistribution):
        return raw
    arr = _frozen(raw)
    if np.any(arr < 0):
        raise DistributionError("negative mass")
    if renormalize:
        total = float(arr.sum())
        lo, hi = RENORMALIZE_BAND
        if not lo <= total <= hi:
            raise DistributionError(f"masses sum to {total!r}, outside {RENORMALIZE_BAND}")
        if abs(total - 1.0) > SUM_TOLERANCE:
            arr = arr / total
    return ProbabilityDistribution(arr)


def as_possibility(raw, normalized: bool = False) -> PossibilityDistribution:
    if isinstance(raw, PossibilityDistribution):
        if normalized and not raw.normalized:
            return PossibilityDistribution(raw.values, normalized=True)
        return raw
    return PossibilityDistribution(raw, normalized=normalized)


def _subset(a) -> OutcomeSubset:
    return a if isinstance(a, OutcomeSubset) else OutcomeSubset(a)


def possibility_measure(pi, a) -> float:
    """Maximum possibility over the outcomes in ``a`` (which must be nonempty)."""
    pi = as_possibility(pi)
    idx = _subset(a).indices(pi.size)
    if idx.size == 0:
        raise DistributionError("possibility of the empty set is undefined")
    return float(pi.values[idx].max())


def probability_measure(p, a) -> float:
    p = validate_probability(p)
    idx = _subset(a).indices(p.size)
    return float(p.masses[idx].sum())
