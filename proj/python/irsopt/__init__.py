# SPDX-License-Identifier: Apache-2.0
"""Manifold-optimization toolkit for multi-IRS MISO weighted sum-rate maximization.

The compiled core exposes the channel model, the alternating solvers and the
experiment harness; see the project README for usage.
"""

from ._core import (  # noqa: F401
    ChannelSet,
    ConfigError,
    DimensionError,
    DmaoOptions,
    DomainError,
    ExperimentConfig,
    InfeasiblePointError,
    ResultRow,
    ScenarioGeometry,
    SingularChannelError,
    SolveResult,
    SolverOptions,
    SummaryRow,
    SystemConfig,
    __version__,
    aggregate,
    augment,
    baseline_mrt,
    baseline_random,
    baseline_zf,
    dmao,
    effective_channel,
    emit_csv,
    emit_summary_csv,
    extract,
    load_config,
    path_loss,
    phases_from_reflection,
    quantize_phases,
    reflection_from_phases,
    run_experiment,
    sample_scenario,
    sinr,
    steering_vector,
    update_gamma,
    weighted_sum_rate,
)

__all__ = [
    "ChannelSet",
    "ConfigError",
    "DimensionError",
    "DmaoOptions",
    "DomainError",
    "ExperimentConfig",
    "InfeasiblePointError",
    "ResultRow",
    "ScenarioGeometry",
    "SingularChannelError",
    "SolveResult",
    "SolverOptions",
    "SummaryRow",
    "SystemConfig",
    "aggregate",
    "augment",
    "baseline_mrt",
    "baseline_random",
    "baseline_zf",
    "dmao",
    "effective_channel",
    "emit_csv",
    "emit_summary_csv",
    "extract",
    "load_config",
    "path_loss",
    "phases_from_reflection",
    "quantize_phases",
    "reflection_from_phases",
    "run_experiment",
    "sample_scenario",
    "sinr",
    "steering_vector",
    "update_gamma",
    "weighted_sum_rate",
]
