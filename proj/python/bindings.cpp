// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the core operations: channel synthesis, the alternating
// solvers, rate evaluation, quantization and the experiment harness.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irsopt/channel.hpp"
#include "irsopt/dmao.hpp"
#include "irsopt/experiment.hpp"
#include "irsopt/manifolds.hpp"
#include "irsopt/objective.hpp"
#include "irsopt/rng.hpp"

namespace py = pybind11;
using namespace irsopt;

namespace {

SystemConfig make_system_config(int bs_antennas, int irs_elements, int irs_count, int users,
                                double power_watts, double noise_dbm,
                                std::optional<std::vector<double>> weights,
                                std::optional<int> quantization) {
  SystemConfig cfg;
  cfg.num_bs_antennas = bs_antennas;
  cfg.elements_per_irs = irs_elements;
  cfg.num_irs = irs_count;
  cfg.num_users = users;
  cfg.max_power_watts = power_watts;
  cfg.noise_power_watts = RealVector::Constant(users, dbm_to_watts(noise_dbm));
  if (weights) {
    cfg.weights = Eigen::Map<const RealVector>(weights->data(),
                                               static_cast<Eigen::Index>(weights->size()));
  } else {
    cfg.weights = uniform_weights(users);
  }
  cfg.quantization_order = quantization;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Manifold-optimization toolkit for multi-IRS MISO weighted sum-rate maximization";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularChannelError>(m, "SingularChannelError", PyExc_RuntimeError);
  py::register_exception<InfeasiblePointError>(m, "InfeasiblePointError", PyExc_ValueError);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init(&make_system_config), py::arg("bs_antennas") = 20,
           py::arg("irs_elements") = 20, py::arg("irs_count") = 2, py::arg("users") = 4,
           py::arg("power_watts") = 1.0, py::arg("noise_dbm") = -80.0,
           py::arg("weights") = std::nullopt, py::arg("quantization") = std::nullopt)
      .def_readwrite("bs_antennas", &SystemConfig::num_bs_antennas)
      .def_readwrite("irs_elements", &SystemConfig::elements_per_irs)
      .def_readwrite("irs_count", &SystemConfig::num_irs)
      .def_readwrite("users", &SystemConfig::num_users)
      .def_readwrite("power_watts", &SystemConfig::max_power_watts)
      .def_readwrite("noise_power_watts", &SystemConfig::noise_power_watts)
      .def_readwrite("weights", &SystemConfig::weights)
      .def_readwrite("quantization", &SystemConfig::quantization_order)
      .def("total_elements", &SystemConfig::total_elements);

  py::class_<ScenarioGeometry>(m, "ScenarioGeometry")
      .def(py::init<>())
      .def_readwrite("bs_position", &ScenarioGeometry::bs_position)
      .def_readwrite("irs_positions", &ScenarioGeometry::irs_positions)
      .def_readwrite("user_center", &ScenarioGeometry::user_center)
      .def_readwrite("user_radius", &ScenarioGeometry::user_radius)
      .def_readwrite("carrier_hz", &ScenarioGeometry::carrier_hz)
      .def_readwrite("nlos_paths", &ScenarioGeometry::num_nlos_paths);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("bs_to_irs", &ChannelSet::bs_to_irs)
      .def_readonly("irs_to_user", &ChannelSet::irs_to_user)
      .def_readonly("noise_power_watts", &ChannelSet::noise_power_watts);

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("max_iters", &SolverOptions::max_iters)
      .def_readwrite("grad_tol", &SolverOptions::grad_tol)
      .def_readwrite("armijo_initial", &SolverOptions::armijo_initial)
      .def_readwrite("armijo_contraction", &SolverOptions::armijo_contraction)
      .def_readwrite("armijo_slope", &SolverOptions::armijo_slope)
      .def_readwrite("armijo_max_backtracks", &SolverOptions::armijo_max_backtracks);

  py::class_<DmaoOptions>(m, "DmaoOptions")
      .def(py::init<>())
      .def_readwrite("outer_max_iters", &DmaoOptions::outer_max_iters)
      .def_readwrite("outer_rel_tol", &DmaoOptions::outer_rel_tol)
      .def_readwrite("beamformer_solver", &DmaoOptions::beamformer_solver)
      .def_readwrite("reflection_solver", &DmaoOptions::reflection_solver)
      .def_readwrite("quantization_order", &DmaoOptions::quantization_order)
      .def_readwrite("literal_quantization_distance",
                     &DmaoOptions::literal_quantization_distance)
      .def_readwrite("reoptimize_after_quantization",
                     &DmaoOptions::reoptimize_after_quantization)
      .def_readwrite("audit_iterates", &DmaoOptions::audit_iterates);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("beamformer", &SolveResult::beamformer)
      .def_readonly("phases", &SolveResult::phases)
      .def_readonly("gamma", &SolveResult::gamma)
      .def_readonly("objective_trace", &SolveResult::objective_trace)
      .def_readonly("final_objective", &SolveResult::final_objective)
      .def_readonly("quantized_objective", &SolveResult::quantized_objective)
      .def_readonly("outer_iterations", &SolveResult::outer_iterations)
      .def_readonly("inner_iterations_beamformer", &SolveResult::inner_iterations_beamformer)
      .def_readonly("inner_iterations_reflection", &SolveResult::inner_iterations_reflection)
      .def_readonly("elapsed_seconds", &SolveResult::elapsed_seconds);

  // channel model
  m.def(
      "sample_scenario",
      [](const ScenarioGeometry& geometry, const SystemConfig& config, std::uint64_t seed) {
        auto rng = make_rng(seed);
        return sample_scenario(geometry, config, rng);
      },
      py::arg("geometry"), py::arg("config"), py::arg("seed"));
  m.def(
      "steering_vector",
      [](double azimuth, double elevation, int rows, int cols, double spacing) {
        return steering_vector(azimuth, elevation, ArrayGeometry{rows, cols, spacing});
      },
      py::arg("azimuth"), py::arg("elevation"), py::arg("rows"), py::arg("cols"),
      py::arg("spacing") = 0.5);
  m.def("path_loss", &path_loss, py::arg("distance_m"), py::arg("carrier_hz"));

  // objective
  m.def("effective_channel", &effective_channel, py::arg("user"), py::arg("u"),
        py::arg("channels"));
  m.def("sinr", &sinr, py::arg("user"), py::arg("beamformer"), py::arg("u"), py::arg("channels"),
        py::arg("config"));
  m.def("weighted_sum_rate", &weighted_sum_rate, py::arg("beamformer"), py::arg("u"),
        py::arg("channels"), py::arg("config"));
  m.def("update_gamma", &update_gamma, py::arg("beamformer"), py::arg("u"), py::arg("channels"),
        py::arg("config"));
  m.def("phases_from_reflection", &phases_from_reflection, py::arg("u"));
  m.def("reflection_from_phases", &reflection_from_phases, py::arg("theta"));
  m.def("augment", &augment, py::arg("beamformer"), py::arg("power"));
  m.def("extract", &extract, py::arg("beamformer_aug"), py::arg("power"));

  // drivers
  auto bind_driver = [&m](const char* name, auto fn, const char* doc) {
    m.def(
        name,
        [fn](const ChannelSet& channels, const SystemConfig& config, const DmaoOptions& opts,
             std::uint64_t seed) {
          auto rng = make_rng(seed);
          return fn(channels, config, opts, rng);
        },
        py::arg("channels"), py::arg("config"), py::arg("options") = DmaoOptions{},
        py::arg("seed") = 1, doc);
  };
  bind_driver("dmao", &dmao,
              "Alternating manifold ascent of the weighted sum-rate (gamma, beamformer, phases)");
  bind_driver("baseline_random", &baseline_random,
              "Random fixed phases; beamformer optimized on the sphere manifold");
  bind_driver("baseline_mrt", &baseline_mrt,
              "Matched-filter beamformer; phases optimized on the oblique manifold");
  bind_driver("baseline_zf", &baseline_zf,
              "Zero-forcing beamformer; phases optimized on the oblique manifold");

  m.def("quantize_phases", &quantize_phases, py::arg("theta"), py::arg("order"),
        py::arg("literal_distance") = false);

  // experiment harness
  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("method", &ResultRow::method)
      .def_readonly("axis_value", &ResultRow::axis_value)
      .def_readonly("trial", &ResultRow::trial)
      .def_readonly("seed", &ResultRow::seed)
      .def_readonly("weighted_sum_rate", &ResultRow::weighted_sum_rate)
      .def_readonly("outer_iterations", &ResultRow::outer_iterations)
      .def_readonly("elapsed_seconds", &ResultRow::elapsed_seconds)
      .def_readonly("status", &ResultRow::status);

  py::class_<SummaryRow>(m, "SummaryRow")
      .def_readonly("method", &SummaryRow::method)
      .def_readonly("axis_value", &SummaryRow::axis_value)
      .def_readonly("mean", &SummaryRow::mean)
      .def_readonly("stderr", &SummaryRow::stderr_)
      .def_readonly("ok_trials", &SummaryRow::ok_trials);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("system", &ExperimentConfig::system)
      .def_readwrite("geometry", &ExperimentConfig::geometry)
      .def_readwrite("solver", &ExperimentConfig::solver)
      .def_readwrite("axis_values", &ExperimentConfig::axis_values)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def_readwrite("output_path", &ExperimentConfig::output_path)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def_property(
          "axis", [](const ExperimentConfig& c) { return sweep_axis_name(c.axis); },
          [](ExperimentConfig& c, const std::string& name) {
            c.axis = sweep_axis_from_name(name);
          })
      .def_property(
          "methods",
          [](const ExperimentConfig& c) {
            std::vector<std::string> names;
            for (Method method : c.methods) names.push_back(method_name(method));
            return names;
          },
          [](ExperimentConfig& c, const std::vector<std::string>& names) {
            c.methods.clear();
            for (const auto& name : names) c.methods.push_back(method_from_name(name));
          });

  m.def("load_config", &load_config, py::arg("path"));
  m.def("run_experiment", &run_experiment, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("aggregate", &aggregate, py::arg("rows"));
  m.def(
      "emit_csv",
      [](const std::vector<ResultRow>& rows, const std::string& path) { emit_csv(rows, path); },
      py::arg("rows"), py::arg("path"));
  m.def(
      "emit_summary_csv",
      [](const std::vector<SummaryRow>& rows, const std::string& path) { emit_csv(rows, path); },
      py::arg("rows"), py::arg("path"));

#ifdef VERSION_INFO
#define IRSOPT_STR_IMPL(x) #x
#define IRSOPT_STR(x) IRSOPT_STR_IMPL(x)
  m.attr("__version__") = IRSOPT_STR(VERSION_INFO);
#else
  m.attr("__version__") = "0.1.0";
#endif
}
