// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsopt/channel.hpp"
#include "irsopt/dmao.hpp"
#include "irsopt/types.hpp"

namespace irsopt {

enum class Method { dmao, random_phase, mrt, zf };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

enum class SweepAxis { antenna_count, element_count, quantization };

std::string sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string& name);

/// One full Monte Carlo experiment: a sweep over one axis, a trial count, a
/// master seed, and the methods to compare. Within a trial every method and
/// every axis value sees channels and initializations drawn from streams
/// keyed only by (master seed, stream tag, trial index), so the comparison is
/// paired and independent of execution order.
struct ExperimentConfig {
  SystemConfig system{};
  ScenarioGeometry geometry{};
  DmaoOptions solver{};
  SweepAxis axis = SweepAxis::antenna_count;
  std::vector<int> axis_values{8, 12, 16, 20, 24};
  int trials = 50;
  std::uint64_t master_seed = 1;
  std::vector<Method> methods{Method::dmao, Method::random_phase, Method::mrt, Method::zf};
  std::string output_path = "results.csv";
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// One (method, axis value, trial) outcome.
struct ResultRow {
  std::string method;
  int axis_value = 0;
  int trial = 0;
  std::uint64_t seed = 0;  // derived channel-stream seed of the trial
  double weighted_sum_rate = 0.0;  // bits/s/Hz
  int outer_iterations = 0;
  double elapsed_seconds = 0.0;
  std::string status;  // "ok" | "skipped_singular"
};

/// Mean and standard error per (method, axis value) over the ok rows.
struct SummaryRow {
  std::string method;
  int axis_value = 0;
  double mean = 0.0;    // NaN when no ok rows
  double stderr_ = 0.0; // sample standard deviation / sqrt(n); 0 for n = 1
  int ok_trials = 0;
};

/// Parses the JSON experiment description; see README for the schema.
/// Throws ConfigError naming the offending field.
ExperimentConfig load_config(const std::string& path);

/// Runs every (axis value, trial, method) combination on a bounded worker
/// pool. One channel realization per trial is shared across all methods and
/// axis values of that trial (paired design); ZF trials with a singular
/// effective channel are recorded as skipped. Rows come back sorted by
/// (method, axis value, trial).
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::vector<SummaryRow> aggregate(const std::vector<ResultRow>& rows);

/// Writes rows as CSV: header line, then one line per row, floats with nine
/// significant digits. I/O failures throw std::runtime_error naming the path.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path);

/// The channel realization used by every method of one trial.
ChannelSet trial_channels(const ExperimentConfig& config, const SystemConfig& trial_system,
                          int trial);

}  // namespace irsopt
