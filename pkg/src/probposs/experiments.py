"""Seeded samplers, the Monte Carlo specificity experiment, and figure data."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import ProbabilityDistribution, validate_probability
from .specificity import specificity_of_transform
from .transforms import INF, TransformSpec, apply_transform, parse_exponent, transform_generalized_fast

DEFAULT_N_LIST = (1.0, 2.0, 3.0, 5.0, 10.0, 100.0)

# Published reference values: exponent -> (mean, sd).
REFERENCE_UNIFORM = {
    1: (0.5098, 0.0002),
    2: (0.5272, 0.0002),
    3: (0.5439, 0.0005),
    5: (0.5751, 0.0011),
    10: (0.6416, 0.0021),
    100: (0.9318, 0.0014),
}
REFERENCE_ZIPF = {
    1: (0.5050, 0.0001),
    2: (0.6744, 0.0005),
    3: (0.7596, 0.0007),
    5: (0.8443, 0.0007),
    10: (0.9201, 0.0005),
    100: (0.9956, 0.0001),
}


class Sampler(str, enum.Enum):
    UNIFORM = "uniform"
    ZIPF = "zipf"


@dataclass(frozen=True)
class ExperimentConfig:
    sampler: Sampler = Sampler.UNIFORM
    seed: int = 0
    zipf_alpha: float = 1.0
    outcomes: int = 1000
    samples_per_distribution: int = 250_000
    trials: int = 100
    n_list: tuple[float, ...] = DEFAULT_N_LIST

    def __post_init__(self):
        object.__setattr__(self, "sampler", Sampler(self.sampler))
        object.__setattr__(self, "n_list", tuple(parse_exponent(n) for n in self.n_list))
        if self.outcomes < 2:
            raise ValueError("need at least 2 outcomes")
        if self.samples_per_distribution < 1 or self.trials < 1:
            raise ValueError("samples and trials must be at least 1")
        if not self.zipf_alpha > 0:
            raise ValueError("zipf_alpha must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.n_list:
            raise ValueError("n_list is empty")

    def base_distribution(self) -> ProbabilityDistribution:
        if self.sampler is Sampler.ZIPF:
            return zipf_weights(self.outcomes, self.zipf_alpha)
        return ProbabilityDistribution(np.full(self.outcomes, 1.0 / self.outcomes))


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    means: np.ndarray
    sds: np.ndarray
    # specificity per trial (rows) and exponent (columns)
    per_trial: np.ndarray = field(repr=False)

    def rows(self) -> list[tuple[float, float, float]]:
        return [(n, float(m), float(s)) for n, m, s in zip(self.config.n_list, self.means, self.sds)]

    def provenance(self) -> dict:
        out = asdict(self.config)
        out["sampler"] = self.config.sampler.value
        out["n_list"] = list(self.config.n_list)
        return out


def zipf_weights(m: int, alpha: float) -> ProbabilityDistribution:
    """Masses proportional to ``i^-alpha`` for ranks ``i = 1..m``."""
    if m < 1 or not alpha > 0:
        raise ValueError("need m >= 1 and alpha > 0")
    logw = -alpha * np.log(np.arange(1, m + 1, dtype=float))
    logw -= np.logaddexp.reduce(logw)
    return validate_probability(np.exp(logw), renormalize=True)


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    """Independent stream for one trial; depends only on ``(seed, trial)``."""
    return np.random.SeedSequence(int(seed), spawn_key=(int(trial),))


def sample_empirical(base, samples: int, seed) -> ProbabilityDistribution:
    """Empirical frequencies of ``samples`` inverse-CDF draws from ``base``.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts.
    """
    base = validate_probability(base).masses
    if samples < 1:
        raise ValueError("samples must be at least 1")
    cdf = np.cumsum(base)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    draws = np.searchsorted(cdf, rng.random(samples), side="right")
    counts = np.bincount(draws, minlength=base.size)
    return validate_probability(counts / samples)


def run_trial(config: ExperimentConfig, trial: int, base=None) -> np.ndarray:
    """Specificities of one empirical distribution, one per exponent in ``config.n_list``."""
    if base is None:
        base = config.base_distribution()
    p = sample_empirical(base, config.samples_per_distribution, trial_seed(config.seed, trial))
    return np.array([specificity_of_transform(p, TransformSpec.generalized(n)) for n in config.n_list])


def run_specificity_experiment(config: ExperimentConfig, trials=None) -> ExperimentReport:
    """Mean and population SD of specificity over ``config.trials`` sampled distributions.

    ``trials`` may reorder the trial indices; the result is identical because
    every trial draws from its own stream and rows are stored by index.
    """
    base = config.base_distribution()
    indices = range(config.trials) if trials is None else list(trials)
    if sorted(indices) != list(range(config.trials)):
        raise ValueError("trials must be a permutation of range(config.trials)")
    per_trial = np.empty((config.trials, len(config.n_list)))
    for t in indices:
        per_trial[t] = run_trial(config, t, base)
    return ExperimentReport(
        config=config,
        means=per_trial.mean(axis=0),
        sds=per_trial.std(axis=0),
        per_trial=per_trial,
    )


def calibrate_zipf_alpha(alphas, config: ExperimentConfig | None = None, reference=REFERENCE_ZIPF):
    """Run the Zipf experiment for each ``alpha`` and score it against ``reference``.

    Returns ``(alpha, report, max_abs_error)`` tuples, the error taken over the
    exponents present in both the report and the reference.
    """
    config = config or ExperimentConfig(sampler=Sampler.ZIPF)
    out = []
    for alpha in alphas:
        cfg = ExperimentConfig(**{**_fields(config), "sampler": Sampler.ZIPF, "zipf_alpha": float(alpha)})
        report = run_specificity_experiment(cfg)
        errs = [abs(mean - reference[n][0]) for n, mean, _ in report.rows() if n in reference]
        out.append((float(alpha), report, max(errs) if errs else math.nan))
    return out


def _fields(config: ExperimentConfig) -> dict:
    return {k: getattr(config, k) for k in config.__dataclass_fields__}


def binary_grid(grid_points: int) -> np.ndarray:
    """``grid_points`` evenly spaced values strictly inside (0, 1)."""
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    return np.arange(1, grid_points + 1) / (grid_points + 1)


def emit_binary_curve(spec: TransformSpec, grid_points: int = 99) -> np.ndarray:
    """Rows ``(p, pi(w1))`` for the binary distribution ``[p, 1 - p]``, ascending in ``p``."""
    ps = binary_grid(grid_points)
    pis = [apply_transform([p, 1.0 - p], spec).values[0] for p in ps]
    return np.column_stack([ps, pis])


def emit_ternary_map(n, grid_step: float) -> np.ndarray:
    """Rows ``(p1, p2, pi_G(w3))`` over grid points with ``p1 + p2 <= 1``."""
    if not 0 < grid_step < 1:
        raise ValueError("grid_step must lie in (0, 1)")
    n = parse_exponent(n)
    k = int(math.floor(1.0 / grid_step + 1e-9))
    axis = np.arange(k + 1) * grid_step
    rows = []
    for p1 in axis:
        for p2 in axis:
            if p1 + p2 > 1.0 + 1e-12:
                break
            p3 = 1.0 - p1 - p2
            p3 = 0.0 if p3 < 1e-12 else p3
            pi = transform_generalized_fast([p1, p2, p3], n)
            rows.append((p1, p2, pi.values[2]))
    return np.array(rows)
