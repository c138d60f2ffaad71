# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the Python bindings: end-to-end solves, rate evaluation
cross-checked in numpy, quantization and the experiment harness."""

import math

import numpy as np
import pytest

import irsopt


@pytest.fixture()
def small_setup():
    config = irsopt.SystemConfig(bs_antennas=6, irs_elements=4, irs_count=2, users=2)
    geometry = irsopt.ScenarioGeometry()
    channels = irsopt.sample_scenario(geometry, config, seed=123)
    return config, geometry, channels


def test_channel_shapes_and_determinism(small_setup):
    config, geometry, channels = small_setup
    assert channels.bs_to_irs.shape == (8, 6)
    assert channels.irs_to_user.shape == (2, 8)
    again = irsopt.sample_scenario(geometry, config, seed=123)
    np.testing.assert_array_equal(channels.bs_to_irs, again.bs_to_irs)
    other = irsopt.sample_scenario(geometry, config, seed=124)
    assert not np.array_equal(channels.bs_to_irs, other.bs_to_irs)


def test_dmao_solve_is_monotone_and_feasible(small_setup):
    config, _, channels = small_setup
    result = irsopt.dmao(channels, config, irsopt.DmaoOptions(), seed=7)
    trace = np.asarray(result.objective_trace)
    assert np.all(np.diff(trace) >= -1e-9 * np.maximum(1.0, np.abs(trace[:-1])))
    assert np.linalg.norm(result.beamformer) ** 2 <= config.power_watts + 1e-10
    u = irsopt.reflection_from_phases(result.phases)
    np.testing.assert_allclose(np.abs(u), 1.0, atol=1e-12)
    assert result.final_objective == pytest.approx(trace[-1])


def test_rate_matches_numpy_recompute(small_setup):
    config, _, channels = small_setup
    result = irsopt.dmao(channels, config, irsopt.DmaoOptions(), seed=11)
    u = irsopt.reflection_from_phases(result.phases)

    # recompute the weighted sum-rate directly from the matrices
    phi = np.diag(np.conj(u))
    eff = channels.irs_to_user @ phi @ channels.bs_to_irs  # K x N
    gains = eff @ result.beamformer  # K x K
    total = 0.0
    for k in range(config.users):
        desired = abs(gains[k, k]) ** 2
        interference = sum(abs(gains[k, j]) ** 2 for j in range(config.users) if j != k)
        r = desired / (interference + config.noise_power_watts[k])
        total += config.weights[k] * math.log2(1.0 + r)
    assert irsopt.weighted_sum_rate(result.beamformer, u, channels, config) == pytest.approx(
        total, rel=1e-10
    )
    assert result.final_objective == pytest.approx(total, rel=1e-10)


def test_baselines_are_dominated_by_dmao(small_setup):
    config, _, channels = small_setup
    opts = irsopt.DmaoOptions()
    joint = irsopt.dmao(channels, config, opts, seed=3)
    rand = irsopt.baseline_random(channels, config, opts, seed=3)
    assert joint.final_objective > 0
    assert rand.final_objective > 0
    # one paired draw is noisy; allow a whisker while smoking out regressions
    assert joint.final_objective >= 0.9 * rand.final_objective


def test_quantize_phases():
    theta = np.array([0.0, math.pi / 4, 2 * math.pi - 0.01])
    quantized = irsopt.quantize_phases(theta, 4)
    assert quantized[0] == 0.0
    assert quantized[1] == 0.0  # tie breaks toward the smaller angle
    assert quantized[2] == 0.0  # circular wraparound
    with pytest.raises(ValueError):
        irsopt.quantize_phases(theta, 1)


def test_quantized_solve_reports_both_objectives(small_setup):
    config, _, channels = small_setup
    opts = irsopt.DmaoOptions()
    opts.quantization_order = 8
    result = irsopt.dmao(channels, config, opts, seed=5)
    assert result.quantized_objective is not None
    assert result.final_objective == pytest.approx(result.quantized_objective)
    levels = np.asarray(result.phases) * 8 / (2 * math.pi)
    np.testing.assert_allclose(levels, np.round(levels), atol=1e-12)


def test_run_experiment_roundtrip(tmp_path):
    cfg = irsopt.ExperimentConfig()
    cfg.system = irsopt.SystemConfig(bs_antennas=4, irs_elements=4, irs_count=2, users=2)
    cfg.axis = "N"
    cfg.axis_values = [4, 6]
    cfg.trials = 2
    cfg.master_seed = 9
    cfg.methods = ["dmao", "zf"]
    cfg.threads = 1
    rows = irsopt.run_experiment(cfg)
    assert len(rows) == 8
    assert [r.method for r in rows] == sorted(r.method for r in rows)

    out = tmp_path / "rows.csv"
    irsopt.emit_csv(rows, str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("method,axis_value,trial,seed,weighted_sum_rate")
    assert len(lines) == 9

    summary = irsopt.aggregate(rows)
    assert {s.method for s in summary} == {"dmao", "zf"}
    for s in summary:
        if s.ok_trials:
            assert s.mean > 0


def test_config_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        irsopt.SystemConfig(users=-1)
    with pytest.raises(ValueError):
        irsopt.load_config("/definitely/not/here.json")
