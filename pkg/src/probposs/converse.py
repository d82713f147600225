"""Possibility to probability converses.

The symmetric and optimal converses are closed form. The generalized one
solves the nonlinear system ``transform_generalized(p, n) = pi`` for
``p_1 >= ... >= p_M > 0`` with a projected, damped Newton iteration on
log-masses.

Inputs are accepted in any order: values are sorted descending, solved, and
the result is mapped back to the caller's positions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DistributionError,
    NORMALIZED_TOLERANCE,
    PossibilityDistribution,
    ProbabilityDistribution,
    as_possibility,
)
from .transforms import descending_order, parse_exponent

SEED_SWITCH_N = 3.0


@dataclass(frozen=True)
class SolverConfig:
    residual_tolerance: float = 1e-10
    max_iterations: int = 200
    damping_floor: float = 1e-4
    ordering_tolerance: float = 1e-12
    seed_switch_n: float = SEED_SWITCH_N

    def __post_init__(self):
        for name in ("residual_tolerance", "damping_floor", "ordering_tolerance", "seed_switch_n"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class SolveReport:
    solution: ProbabilityDistribution | None
    iterations: int
    final_residual: float
    converged: bool
    # best iterate in caller order, kept even when it is not a valid distribution
    best_masses: np.ndarray | None = None


def _checked(pi) -> np.ndarray:
    pi = as_possibility(pi).values
    if abs(pi.max() - 1.0) > NORMALIZED_TOLERANCE:
        raise DistributionError(f"max possibility is {pi.max()!r}; converses need 1")
    return pi


def _to_probability(masses: np.ndarray) -> ProbabilityDistribution:
    return ProbabilityDistribution(np.clip(masses, 0.0, 1.0))


def converse_symmetric(pi) -> ProbabilityDistribution:
    """Inverse of :func:`~probposs.transforms.transform_symmetric`.

    On descending values, ``p_i = sum_{j >= i} (pi_j - pi_{j+1}) / j`` with
    ``pi_{M+1} = 0`` and 1-based ``j``.
    """
    pi = _checked(pi)
    order = descending_order(pi)
    desc = pi[order]
    steps = (desc - np.append(desc[1:], 0.0)) / np.arange(1, desc.size + 1)
    out = np.empty_like(pi)
    out[order] = np.cumsum(steps[::-1])[::-1]
    return _to_probability(out)


def converse_optimal(pi) -> ProbabilityDistribution:
    """Inverse of :func:`~probposs.transforms.transform_optimal`, repeated values allowed.

    Each value loses the next strictly smaller value (0 if none) and the
    difference is split evenly across its repetitions.
    """
    pi = _checked(pi)
    levels, inverse, reps = np.unique(pi, return_inverse=True, return_counts=True)
    below = np.concatenate([[0.0], levels[:-1]])
    return _to_probability(((levels - below) / reps)[inverse])


def _forward(x: np.ndarray, n: float):
    """Ordered forward map on log-masses ``x`` (descending) and its Jacobian in ``x``.

    ``G_i = sum_{j<i} p_j (p_i/p_j)^n + sum_{j>=i} p_j``.
    """
    p = np.exp(x)
    m = p.size
    lower = np.tril(np.ones((m, m), dtype=bool), k=-1)
    # t[i, j] = p_j (p_i/p_j)^n for j < i; exponent <= x_j since x_i <= x_j
    expo = x[None, :] + n * (x[:, None] - x[None, :])
    t = np.where(lower, np.exp(np.where(lower, expo, 0.0)), 0.0)
    head = t.sum(axis=1)
    tail = np.cumsum(p[::-1])[::-1]
    g = head + tail

    jac = np.where(lower, (1.0 - n) * t, np.broadcast_to(p, (m, m)))
    jac[np.diag_indices(m)] = n * head + p
    return g, jac


def _project_descending(x: np.ndarray) -> np.ndarray:
    """Euclidean projection onto ``x_1 >= x_2 >= ...`` (pool adjacent violators)."""
    values: list[float] = []
    weights: list[int] = []
    for v in x:
        values.append(float(v))
        weights.append(1)
        while len(values) > 1 and values[-2] < values[-1]:
            w = weights[-2] + weights[-1]
            merged = (values[-2] * weights[-2] + values[-1] * weights[-1]) / w
            values[-2:] = [merged]
            weights[-2:] = [w]
    return np.repeat(values, weights)


def _newton_step(g_res: np.ndarray, jac: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(jac, -g_res)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(jac, -g_res, rcond=None)[0]


def converse_generalized(pi, n, config: SolverConfig | None = None) -> SolveReport:
    """Solve for the masses whose generalized transform with exponent ``n`` is ``pi``.

    Outcomes with zero possibility get zero mass and drop out of the
    system. A solution need not exist, so failure is reported through
    ``converged`` rather than raised.
    """
    config = config or SolverConfig()
    n = parse_exponent(n)
    if math.isinf(n):
        raise DistributionError("use converse_optimal for n = inf")
    pi = _checked(pi)

    order = descending_order(pi)
    live = order[pi[order] > 0]
    target = pi[live]

    seed_fn = converse_symmetric if n < config.seed_switch_n else converse_optimal
    seed = seed_fn(pi).masses[live]
    floor = np.finfo(float).tiny / np.finfo(float).eps
    x = _project_descending(np.log(np.maximum(seed, floor)))

    def merit(x):
        g, jac = _forward(x, n)
        r = g - target
        return r, jac, float(np.max(np.abs(r)))

    r, jac, res = merit(x)
    best_x, best_res = x, res
    iterations = 0
    polish = 2
    while iterations < config.max_iterations:
        if res <= config.residual_tolerance:
            if polish == 0:
                break
            polish -= 1
        iterations += 1
        step = _newton_step(r, jac)
        if not np.all(np.isfinite(step)):
            break
        half_sq = 0.5 * float(r @ r)
        lam = 1.0
        while True:
            cand = _project_descending(x + lam * step)
            r_c, jac_c, res_c = merit(cand)
            if 0.5 * float(r_c @ r_c) <= (1.0 - 1e-4 * lam) * half_sq or lam <= config.damping_floor:
                break
            lam = max(lam * 0.5, config.damping_floor)
        if res <= config.residual_tolerance and res_c >= res:
            break
        x, r, jac, res = cand, r_c, jac_c, res_c
        if res < best_res:
            best_x, best_res = x, res

    masses = np.zeros_like(pi)
    masses[live] = np.exp(best_x)
    p_desc = np.exp(best_x)
    ordered = bool(np.all(np.diff(p_desc) <= config.ordering_tolerance)) and p_desc[-1] > 0
    converged = bool(best_res <= config.residual_tolerance and ordered)
    solution = None
    try:
        solution = ProbabilityDistribution(masses)
    except DistributionError:
        converged = False
    return SolveReport(
        solution=solution,
        iterations=iterations,
        final_residual=best_res,
        converged=converged,
        best_masses=masses,
    )
