import numpy as np
import pytest

from probposs import TransformSpec, transform_generalized
from probposs.experiments import (
    ExperimentConfig,
    Sampler,
    emit_binary_curve,
    emit_ternary_map,
    run_specificity_experiment,
    sample_empirical,
    trial_seed,
    zipf_weights,
)

SMALL = dict(outcomes=50, samples_per_distribution=5000, trials=6)


def test_zipf_weights():
    np.testing.assert_allclose(zipf_weights(3, 1.0).masses, [6 / 11, 3 / 11, 2 / 11], atol=1e-15)
    assert zipf_weights(1, 2.5).tolist() == [1.0]
    w = zipf_weights(2, 50).masses
    assert w[1] == pytest.approx(2.0**-50 / (1 + 2.0**-50), rel=1e-12)
    assert w[0] == pytest.approx(1.0, abs=1e-15)


def test_sample_empirical_degenerate():
    assert sample_empirical([1.0], 17, seed=3).tolist() == [1.0]


def test_sample_empirical_binary_reproducible():
    a = sample_empirical([0.5, 0.5], 250_000, seed=42)
    b = sample_empirical([0.5, 0.5], 250_000, seed=42)
    assert a == b
    np.testing.assert_allclose(a.masses, 0.5, atol=0.01)
    assert sum(a) == pytest.approx(1.0, abs=1e-15)


def test_sample_empirical_uniform_bounds():
    p = sample_empirical(np.full(1000, 1e-3), 250_000, seed=7)
    assert np.all((p.masses >= 0) & (p.masses <= 0.003))


def test_sample_empirical_never_draws_zero_mass():
    p = sample_empirical([0.0, 0.5, 0.0, 0.5, 0.0], 10_000, seed=1)
    assert p.masses[[0, 2, 4]].sum() == 0


def test_trial_seeds_are_distinct():
    draws = {tuple(np.random.default_rng(trial_seed(5, t)).integers(0, 2**32, 4)) for t in range(50)}
    assert len(draws) == 50


def test_experiment_deterministic_and_order_insensitive():
    config = ExperimentConfig(seed=99, **SMALL)
    a = run_specificity_experiment(config)
    b = run_specificity_experiment(config, trials=reversed(range(config.trials)))
    assert np.array_equal(a.per_trial, b.per_trial)
    assert np.array_equal(a.means, b.means) and np.array_equal(a.sds, b.sds)
    c = run_specificity_experiment(ExperimentConfig(seed=100, **SMALL))
    assert not np.array_equal(a.per_trial, c.per_trial)


def test_single_trial_has_zero_sd():
    report = run_specificity_experiment(
        ExperimentConfig(sampler="zipf", seed=1, outcomes=100, samples_per_distribution=2000, trials=1)
    )
    assert np.all(report.sds == 0)


@pytest.mark.parametrize("sampler", list(Sampler))
def test_means_increase_with_n(sampler):
    report = run_specificity_experiment(ExperimentConfig(sampler=sampler, seed=3, **SMALL))
    assert np.all(np.diff(report.means) > 0)
    assert np.all((report.means > 0) & (report.means <= 1))
    assert np.all(report.sds >= 0)
    assert report.provenance()["sampler"] == sampler.value


@pytest.mark.parametrize(
    "kwargs",
    [dict(outcomes=1), dict(trials=0), dict(samples_per_distribution=0), dict(n_list=(1, 0)), dict(seed=-1)],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ExperimentConfig(**kwargs)


def test_binary_curve_values():
    sym = emit_binary_curve(TransformSpec.symmetric(), 99)
    opt = emit_binary_curve(TransformSpec.optimal(), 99)
    gen = emit_binary_curve(TransformSpec.generalized(2), 99)
    assert np.all(np.diff(sym[:, 0]) > 0)
    assert sym[:, 0].min() > 0 and sym[:, 0].max() < 1
    at = lambda table, x: table[np.isclose(table[:, 0], x), 1][0]
    assert at(sym, 0.25) == pytest.approx(0.5, abs=1e-15)
    assert at(opt, 0.75) == 1.0
    assert at(opt, 0.25) == pytest.approx(0.25, abs=1e-15)
    assert at(gen, 0.4) == pytest.approx(2 / 3, abs=1e-9)
    # jump of the optimal curve across the tie
    assert at(opt, 0.49) < 0.5 and at(opt, 0.5) == 1.0


def test_binary_curves_respect_dominance():
    sym = emit_binary_curve(TransformSpec.symmetric(), 199)[:, 1]
    opt = emit_binary_curve(TransformSpec.optimal(), 199)[:, 1]
    for n in (1, 2, 4, 10, 100):
        gen = emit_binary_curve(TransformSpec.generalized(n), 199)[:, 1]
        assert np.all(opt <= gen + 1e-12) and np.all(gen <= sym + 1e-12)


def test_ternary_map():
    table = emit_ternary_map(1, 0.01)
    assert np.all(table[:, 0] + table[:, 1] <= 1 + 1e-12)
    assert len(table) == 101 * 102 // 2
    row = table[np.isclose(table[:, 0], 0.5) & np.isclose(table[:, 1], 0.3)][0]
    assert row[2] == pytest.approx(0.6, abs=1e-12)
    inf_row = emit_ternary_map("inf", 0.1)
    row = inf_row[np.isclose(inf_row[:, 0], 0.5) & np.isclose(inf_row[:, 1], 0.3)][0]
    assert row[2] == pytest.approx(0.2, abs=1e-12)
    third = emit_ternary_map(3, 1 / 3)
    row = third[np.isclose(third[:, 0], 1 / 3) & np.isclose(third[:, 1], 1 / 3)][0]
    assert row[2] == pytest.approx(1.0, abs=1e-12)


def test_ternary_map_matches_naive_transform():
    table = emit_ternary_map(5, 0.05)
    for p1, p2, pi3 in table[::7]:
        expected = transform_generalized([p1, p2, max(0.0, 1 - p1 - p2)], 5).values[2]
        assert pi3 == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("step", [0, 1, -0.1])
def test_ternary_map_rejects_bad_step(step):
    with pytest.raises(ValueError):
        emit_ternary_map(1, step)
