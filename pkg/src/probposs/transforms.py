"""Probability to possibility transformations.

All four transforms return a normalized :class:`PossibilityDistribution`:
outcomes carrying the largest mass map to exactly 1. Zero masses map to 0
whenever some other mass is positive.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DistributionError,
    PossibilityDistribution,
    ProbabilityDistribution,
    validate_probability,
)

logger = logging.getLogger(__name__)

INF = math.inf
"""Exponent sentinel: the generalized transform at ``INF`` is the optimal transform."""

# exp() underflows to 0 below this
_EXP_FLOOR = -745.0



class TransformKind(str, enum.Enum):
    SYMMETRIC = "symmetric"
    OPTIMAL = "optimal"
    WEAK_ORDER = "weak_order"
    GENERALIZED = "generalized"

    @classmethod
    def parse(cls, name: str) -> "TransformKind":
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            raise ValueError(f"unknown transform {name!r}") from None


def parse_exponent(value) -> float:
    """Parse an exponent, accepting ``"inf"``/``"infinity"`` for :data:`INF`."""
    if isinstance(value, str):
        text = value.strip().lower()
        n = INF if text in ("inf", "infinity", "∞") else float(text)
    else:
        n = float(value)
    if math.isnan(n) or n <= 0:
        raise DistributionError(f"exponent must be positive, got {value!r}")
    return n


@dataclass(frozen=True)
class TransformSpec:
    """Which transform to apply.

    ``n`` is only meaningful for the generalized family and ``order`` only
    for the weak-order variant.
    """

    kind: TransformKind
    n: float | None = None
    order: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TransformKind(self.kind))
        if self.kind is TransformKind.GENERALIZED:
            if self.n is None:
                raise ValueError("generalized transform needs an exponent")
            object.__setattr__(self, "n", parse_exponent(self.n))
        if self.order is not None:
            object.__setattr__(self, "order", tuple(int(i) for i in self.order))

    @classmethod
    def symmetric(cls):
        return cls(TransformKind.SYMMETRIC)

    @classmethod
    def optimal(cls):
        return cls(TransformKind.OPTIMAL)

    @classmethod
    def weak_order(cls, order=None):
        return cls(TransformKind.WEAK_ORDER, order=order)

    @classmethod
    def generalized(cls, n):
        return cls(TransformKind.GENERALIZED, n=n)

    @property
    def label(self) -> str:
        if self.kind is TransformKind.GENERALIZED:
            return f"generalized(n={self.n:g})"
        return self.kind.value


# cap on matrix cells per block in the quadratic paths
_BLOCK_CELLS = 1 << 22


def _row_sums(p: np.ndarray, terms) -> np.ndarray:
    """Row sums of ``terms(p[rows], p)`` evaluated in bounded-memory blocks."""
    step = max(1, _BLOCK_CELLS // p.size)
    out = np.empty_like(p)
    for start in range(0, p.size, step):
        out[start:start + step] = terms(p[start:start + step], p).sum(axis=1)
    return out


def _finish(pi: np.ndarray, p: np.ndarray) -> PossibilityDistribution:
    # The top outcome's possibility is the total mass, i.e. 1 up to rounding.
    pi = np.clip(pi, 0.0, 1.0)
    pi[p == p.max()] = 1.0
    return PossibilityDistribution(pi, normalized=True)


def transform_symmetric(p) -> PossibilityDistribution:
    """``pi_i = sum_j min(p_i, p_j)``."""
    p = validate_probability(p).masses
    pi = _row_sums(p, lambda rows, cols: np.minimum(rows[:, None], cols[None, :]))
    return _finish(pi, p)


def transform_optimal(p) -> PossibilityDistribution:
    """``pi_i = sum of p_j over p_j <= p_i``; tied masses share one value."""
    p = validate_probability(p).masses
    asc = np.sort(p)
    cum = np.cumsum(asc)
    last_le = np.searchsorted(asc, p, side="right") - 1
    return _finish(cum[last_le], p)


def descending_order(p) -> np.ndarray:
    """Stable ordering of outcomes by non-increasing mass."""
    p = np.asarray(p, dtype=float)
    return np.argsort(-p, kind="stable")


def transform_weak_order(p, order=None) -> PossibilityDistribution:
    """Suffix sums of the masses along a non-increasing ``order``.

    Ties are broken by ``order``, so tied masses get distinct possibilities.
    Without an order the stable descending one is used.
    """
    p = validate_probability(p).masses
    if order is None:
        order = descending_order(p)
    order = np.asarray(order)
    if order.shape != p.shape or not np.array_equal(np.sort(order), np.arange(p.size)):
        raise DistributionError("order must be a permutation of the outcome positions")
    ranked = p[order]
    if np.any(np.diff(ranked) > 0):
        raise DistributionError("order does not sort the masses non-increasingly")
    suffix = np.cumsum(ranked[::-1])[::-1]
    pi = np.empty_like(p)
    pi[order] = suffix
    pi = np.clip(pi, 0.0, 1.0)
    pi[order[0]] = 1.0
    return PossibilityDistribution(pi, normalized=True)


def _scaled_terms(rows: np.ndarray, cols: np.ndarray, n: float) -> np.ndarray:
    """Matrix of ``p_j * min(1, (p_i/p_j)^n)`` indexed ``[i, j]``.

    Written as ``p_i * (p_i/p_j)^(n-1)`` on the ``p_i < p_j`` branch so that
    n = 1 reproduces ``min(p_i, p_j)`` bit for bit.
    """
    pi_ = rows[:, None]
    pj = cols[None, :]
    below = pi_ < pj
    with np.errstate(divide="ignore", invalid="ignore"):
        logratio = np.log(pi_) - np.log(pj)
        expo = np.where(below & (pi_ > 0), (n - 1.0) * logratio, 0.0)
        factor = np.where(expo < _EXP_FLOOR, 0.0, np.exp(expo))
        terms = np.where(below, np.where(pi_ > 0, pi_ * factor, 0.0), pj)
    return terms


def transform_generalized(p, n) -> PossibilityDistribution:
    """Direct ``O(M^2)`` evaluation of the parametric family.

    ``pi_i = sum_j p_j * min(1, (p_i/p_j)^n)``. ``n = 1`` gives the symmetric
    transform exactly and ``n = INF`` dispatches to :func:`transform_optimal`.
    """
    n = parse_exponent(n)
    if math.isinf(n):
        return transform_optimal(p)
    p = validate_probability(p).masses
    return _finish(_row_sums(p, lambda rows, cols: _scaled_terms(rows, cols, n)), p)


def transform_generalized_fast(p, n) -> PossibilityDistribution:
    """Sorted ``O(M log M)`` evaluation of the parametric family.

    Masses at most ``p_i`` contribute their raw value (suffix sums over the
    descending order). The ``k`` strictly larger masses contribute
    ``p_i * (p_i/q)^(n-1) * S_k`` where ``q`` is the smallest of them and
    ``S_k = sum_j (q/q_j)^(n-1)`` is carried as a running sum rescaled by
    neighbour ratios, so no power of a single mass is ever formed.
    """
    n = parse_exponent(n)
    if math.isinf(n):
        return transform_optimal(p)
    p = validate_probability(p).masses
    desc = np.sort(p)[::-1]
    # suffix[k] = sum of desc[k:]
    suffix = np.concatenate([np.cumsum(desc[::-1])[::-1], [0.0]])
    # number of masses strictly greater than each p_i
    greater = np.searchsorted(-desc, -p, side="left")

    pos = desc[desc > 0]
    steps = np.ones(pos.size)
    steps[1:] = (pos[1:] / pos[:-1]) ** (n - 1.0)
    # rescaled[k] = S_k; S_{k+1} = S_k * (q_k/q_{k-1})^(n-1) + 1
    rescaled = np.zeros(desc.size + 1)
    running = 0.0
    for k, step in enumerate(steps.tolist(), start=1):
        running = running * step + 1.0
        rescaled[k] = running

    head = np.zeros_like(p)
    live = (p > 0) & (greater > 0)
    k = greater[live]
    head[live] = p[live] * (p[live] / desc[k - 1]) ** (n - 1.0) * rescaled[k]
    return _finish(head + suffix[greater], p)


def apply_transform(p, spec: TransformSpec) -> PossibilityDistribution:
    """Dispatch on ``spec.kind``; the generalized family uses the fast path."""
    kind = spec.kind
    if kind is TransformKind.SYMMETRIC:
        return transform_symmetric(p)
    if kind is TransformKind.OPTIMAL:
        return transform_optimal(p)
    if kind is TransformKind.WEAK_ORDER:
        if spec.order is None:
            order = descending_order(validate_probability(p).masses)
            logger.info("weak_order: no order given, using stable descending order %s",
                        order.tolist())
            return transform_weak_order(p, order)
        return transform_weak_order(p, spec.order)
    return transform_generalized_fast(p, spec.n)
