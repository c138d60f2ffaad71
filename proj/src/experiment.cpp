// SPDX-License-Identifier: Apache-2.0
#include "irsopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "irsopt/rng.hpp"

namespace irsopt {

namespace {

using nlohmann::json;

// Stream tags for derive_seed; tag 0 is the channel stream, methods follow.
constexpr std::uint64_t kChannelStreamTag = 0;

std::uint64_t method_stream_tag(Method m) { return static_cast<std::uint64_t>(m) + 1; }

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

template <typename T>
T get_field(const json& j, const std::string& path, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

SolverOptions parse_solver_options(const json& j, const std::string& path) {
  SolverOptions opts;
  opts.max_iters = get_field(j, path, "max_iters", opts.max_iters);
  opts.grad_tol = get_field(j, path, "grad_tol", opts.grad_tol);
  opts.armijo_initial = get_field(j, path, "armijo_initial", opts.armijo_initial);
  opts.armijo_contraction = get_field(j, path, "armijo_contraction", opts.armijo_contraction);
  opts.armijo_slope = get_field(j, path, "armijo_slope", opts.armijo_slope);
  opts.armijo_max_backtracks =
      get_field(j, path, "armijo_max_backtracks", opts.armijo_max_backtracks);
  return opts;
}

Eigen::Vector2d parse_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path + ": expected [x, y] in meters");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::dmao: return "dmao";
    case Method::random_phase: return "random";
    case Method::mrt: return "mrt";
    case Method::zf: return "zf";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "dmao") return Method::dmao;
  if (name == "random") return Method::random_phase;
  if (name == "mrt") return Method::mrt;
  if (name == "zf") return Method::zf;
  throw ConfigError("methods: unknown method '" + name + "' (expected dmao|random|mrt|zf)");
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::antenna_count: return "N";
    case SweepAxis::element_count: return "M";
    case SweepAxis::quantization: return "Q";
  }
  return "?";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "N") return SweepAxis::antenna_count;
  if (name == "M") return SweepAxis::element_count;
  if (name == "Q") return SweepAxis::quantization;
  throw ConfigError("sweep.axis: unknown axis '" + name + "' (expected N|M|Q)");
}

void ExperimentConfig::validate() const {
  system.validate();
  geometry.validate();
  solver.validate();
  if (axis_values.empty()) throw ConfigError("sweep.values: must not be empty");
  for (int v : axis_values) {
    if (v <= 0) throw ConfigError("sweep.values: entries must be positive");
    if ((axis == SweepAxis::antenna_count || axis == SweepAxis::element_count) && v % 2 != 0)
      throw ConfigError("sweep.values: N and M sweeps need even values (array rows fixed at 2)");
    if (axis == SweepAxis::quantization && v < 2)
      throw ConfigError("sweep.values: quantization orders must be >= 2");
  }
  if (system.num_bs_antennas % 2 != 0)
    throw ConfigError("system.num_bs_antennas: must be even (array rows fixed at 2)");
  if (system.elements_per_irs % 2 != 0)
    throw ConfigError("system.elements_per_irs: must be even (array rows fixed at 2)");
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (methods.empty()) throw ConfigError("methods: must not be empty");
  if (threads < 0) throw ConfigError("threads: must be >= 0");
  if (output_path.empty()) throw ConfigError("output: must not be empty");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }

  ExperimentConfig cfg;

  const json sys = j.value("system", json::object());
  cfg.system.num_bs_antennas = get_field(sys, "system", "bs_antennas", cfg.system.num_bs_antennas);
  cfg.system.elements_per_irs =
      get_field(sys, "system", "irs_elements", cfg.system.elements_per_irs);
  cfg.system.num_irs = get_field(sys, "system", "irs_count", cfg.system.num_irs);
  cfg.system.num_users = get_field(sys, "system", "users", cfg.system.num_users);
  cfg.system.max_power_watts = get_field(sys, "system", "power_watts", cfg.system.max_power_watts);
  const double noise_dbm = get_field(sys, "system", "noise_dbm", -80.0);
  cfg.system.noise_power_watts =
      RealVector::Constant(cfg.system.num_users, dbm_to_watts(noise_dbm));
  if (sys.contains("weights")) {
    const auto w = get_field(sys, "system", "weights", std::vector<double>{});
    cfg.system.weights = Eigen::Map<const RealVector>(w.data(), w.size());
  } else {
    cfg.system.weights = uniform_weights(cfg.system.num_users);
  }
  if (sys.contains("quantization") && !sys.at("quantization").is_null())
    cfg.system.quantization_order = get_field(sys, "system", "quantization", 0);

  const json geo = j.value("geometry", json::object());
  if (geo.contains("bs")) cfg.geometry.bs_position = parse_point(geo.at("bs"), "geometry.bs");
  if (geo.contains("irs")) {
    if (!geo.at("irs").is_array()) throw ConfigError("geometry.irs: expected a list of [x, y]");
    cfg.geometry.irs_positions.clear();
    int idx = 0;
    for (const auto& p : geo.at("irs"))
      cfg.geometry.irs_positions.push_back(
          parse_point(p, "geometry.irs[" + std::to_string(idx++) + "]"));
  }
  if (geo.contains("user_center"))
    cfg.geometry.user_center = parse_point(geo.at("user_center"), "geometry.user_center");
  cfg.geometry.user_radius = get_field(geo, "geometry", "user_radius", cfg.geometry.user_radius);
  cfg.geometry.carrier_hz = get_field(geo, "geometry", "carrier_hz", cfg.geometry.carrier_hz);
  cfg.geometry.num_nlos_paths =
      get_field(geo, "geometry", "nlos_paths", cfg.geometry.num_nlos_paths);

  const json sol = j.value("solver", json::object());
  cfg.solver.outer_max_iters =
      get_field(sol, "solver", "outer_max_iters", cfg.solver.outer_max_iters);
  cfg.solver.outer_rel_tol = get_field(sol, "solver", "outer_rel_tol", cfg.solver.outer_rel_tol);
  if (sol.contains("beamformer"))
    cfg.solver.beamformer_solver = parse_solver_options(sol.at("beamformer"), "solver.beamformer");
  if (sol.contains("reflection"))
    cfg.solver.reflection_solver = parse_solver_options(sol.at("reflection"), "solver.reflection");
  cfg.solver.literal_quantization_distance =
      get_field(sol, "solver", "literal_quantization_distance",
                cfg.solver.literal_quantization_distance);
  cfg.solver.reoptimize_after_quantization =
      get_field(sol, "solver", "reoptimize_after_quantization",
                cfg.solver.reoptimize_after_quantization);

  const json sweep = j.value("sweep", json::object());
  if (sweep.contains("axis"))
    cfg.axis = sweep_axis_from_name(get_field(sweep, "sweep", "axis", std::string{"N"}));
  if (sweep.contains("values"))
    cfg.axis_values = get_field(sweep, "sweep", "values", cfg.axis_values);

  cfg.trials = get_field(j, "config", "trials", cfg.trials);
  cfg.master_seed = get_field(j, "config", "seed", cfg.master_seed);
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& name : get_field(j, "config", "methods", std::vector<std::string>{}))
      cfg.methods.push_back(method_from_name(name));
  }
  cfg.output_path = get_field(j, "config", "output", cfg.output_path);
  cfg.threads = get_field(j, "config", "threads", cfg.threads);

  cfg.validate();
  return cfg;
}

namespace {

/// Applies one sweep-axis value to a copy of the base system and solver.
void apply_axis(SweepAxis axis, int value, SystemConfig& system, DmaoOptions& solver) {
  switch (axis) {
    case SweepAxis::antenna_count: system.num_bs_antennas = value; break;
    case SweepAxis::element_count: system.elements_per_irs = value; break;
    case SweepAxis::quantization:
      system.quantization_order = value;
      solver.quantization_order = value;
      break;
  }
}

ResultRow run_one(Method method, const ChannelSet& channels, const SystemConfig& system,
                  const DmaoOptions& solver, const ExperimentConfig& config, int axis_value,
                  int trial, std::uint64_t channel_seed) {
  ResultRow row;
  row.method = method_name(method);
  row.axis_value = axis_value;
  row.trial = trial;
  row.seed = channel_seed;

  auto rng = make_rng(derive_seed(config.master_seed, method_stream_tag(method),
                                  static_cast<std::uint64_t>(trial)));
  try {
    SolveResult result;
    switch (method) {
      case Method::dmao: result = dmao(channels, system, solver, rng); break;
      case Method::random_phase: result = baseline_random(channels, system, solver, rng); break;
      case Method::mrt: result = baseline_mrt(channels, system, solver, rng); break;
      case Method::zf: result = baseline_zf(channels, system, solver, rng); break;
    }
    row.weighted_sum_rate = result.final_objective;
    row.outer_iterations = result.outer_iterations;
    row.elapsed_seconds = result.elapsed_seconds;
    row.status = "ok";
  } catch (const SingularChannelError&) {
    row.weighted_sum_rate = 0.0;
    row.outer_iterations = 0;
    row.elapsed_seconds = 0.0;
    row.status = "skipped_singular";
  }
  return row;
}

}  // namespace

ChannelSet trial_channels(const ExperimentConfig& config, const SystemConfig& trial_system,
                          int trial) {
  auto rng = make_rng(
      derive_seed(config.master_seed, kChannelStreamTag, static_cast<std::uint64_t>(trial)));
  return sample_scenario(config.geometry, trial_system, rng);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();

  const std::size_t num_axes = config.axis_values.size();
  const std::size_t num_items = num_axes * static_cast<std::size_t>(config.trials);
  std::vector<ResultRow> rows(num_items * config.methods.size());

  std::atomic<std::size_t> next_item{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    for (;;) {
      const std::size_t item = next_item.fetch_add(1);
      if (item >= num_items) return;
      if (failed.load()) return;
      try {
        const std::size_t axis_index = item / config.trials;
        const int trial = static_cast<int>(item % config.trials);
        const int axis_value = config.axis_values[axis_index];

        SystemConfig system = config.system;
        DmaoOptions solver = config.solver;
        solver.quantization_order = config.system.quantization_order;
        apply_axis(config.axis, axis_value, system, solver);
        if (system.noise_power_watts.size() != system.num_users)
          throw ConfigError("system.noise_power_watts: length does not match users");

        const std::uint64_t channel_seed = derive_seed(config.master_seed, kChannelStreamTag,
                                                       static_cast<std::uint64_t>(trial));
        const ChannelSet channels = trial_channels(config, system, trial);

        for (std::size_t m = 0; m < config.methods.size(); ++m) {
          rows[item * config.methods.size() + m] =
              run_one(config.methods[m], channels, system, solver, config, axis_value, trial,
                      channel_seed);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t num_threads =
      std::min<std::size_t>(config.threads > 0 ? config.threads : hw, std::max<std::size_t>(num_items, 1));
  if (num_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (std::size_t i = 0; i < num_threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.method != b.method) return a.method < b.method;
    if (a.axis_value != b.axis_value) return a.axis_value < b.axis_value;
    return a.trial < b.trial;
  });
  return rows;
}

std::vector<SummaryRow> aggregate(const std::vector<ResultRow>& rows) {
  // rows arrive sorted by (method, axis value, trial); walk the groups.
  std::vector<SummaryRow> summary;
  std::size_t i = 0;
  while (i < rows.size()) {
    const std::string& method = rows[i].method;
    const int axis_value = rows[i].axis_value;
    double sum = 0.0;
    double sum_sq = 0.0;
    int ok = 0;
    std::size_t j = i;
    for (; j < rows.size() && rows[j].method == method && rows[j].axis_value == axis_value; ++j) {
      if (rows[j].status == "ok") {
        sum += rows[j].weighted_sum_rate;
        sum_sq += rows[j].weighted_sum_rate * rows[j].weighted_sum_rate;
        ++ok;
      }
    }
    SummaryRow s;
    s.method = method;
    s.axis_value = axis_value;
    s.ok_trials = ok;
    if (ok == 0) {
      s.mean = std::numeric_limits<double>::quiet_NaN();
      s.stderr_ = std::numeric_limits<double>::quiet_NaN();
    } else {
      s.mean = sum / ok;
      if (ok >= 2) {
        const double var = std::max(0.0, (sum_sq - sum * sum / ok) / (ok - 1));
        s.stderr_ = std::sqrt(var / ok);
      } else {
        s.stderr_ = 0.0;
      }
    }
    summary.push_back(std::move(s));
    i = j;
  }
  return summary;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path + " for writing");
  out << "method,axis_value,trial,seed,weighted_sum_rate,outer_iterations,elapsed_seconds,status\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.axis_value << ',' << r.trial << ',' << r.seed << ','
        << format_double(r.weighted_sum_rate) << ',' << r.outer_iterations << ','
        << format_double(r.elapsed_seconds) << ',' << r.status << '\n';
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path + " for writing");
  out << "method,axis_value,mean_weighted_sum_rate,stderr_weighted_sum_rate,ok_trials\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.axis_value << ',';
    if (r.ok_trials == 0) {
      out << ",";  // empty mean and stderr flag the cell
    } else {
      out << format_double(r.mean) << ',' << format_double(r.stderr_);
    }
    out << ',' << r.ok_trials << '\n';
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace irsopt
