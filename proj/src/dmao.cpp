// SPDX-License-Identifier: Apache-2.0
#include "irsopt/dmao.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "irsopt/manifolds.hpp"
#include "irsopt/objective.hpp"

namespace irsopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZfConditionLimit = 1e12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool converged(double current, double previous, double rel_tol) {
  return std::abs(current - previous) <= rel_tol * std::max(std::abs(previous), 1e-12);
}

/// Shared bookkeeping for the alternating drivers.
struct OuterLoop {
  explicit OuterLoop(const DmaoOptions& opts) : opts_(opts), start_(Clock::now()) {}

  template <typename M>
  std::function<void(const typename M::Point&, int)> auditor(const M& manifold,
                                                             SolveResult& result) const {
    if (!opts_.audit_iterates) return nullptr;
    return [&manifold, &result](const typename M::Point& point, int) {
      result.max_manifold_violation =
          std::max(result.max_manifold_violation, manifold.feasibility_error(point));
    };
  }

  void finish(SolveResult& result) const { result.elapsed_seconds = seconds_since(start_); }

  const DmaoOptions& opts_;
  Clock::time_point start_;
};

void apply_quantization(SolveResult& result, const ComplexVector& u, const ChannelSet& channels,
                        const SystemConfig& config, const DmaoOptions& opts) {
  result.phases = phases_from_reflection(u);
  result.final_objective = result.objective_trace.back();
  if (!opts.quantization_order) return;

  const RealVector quantized =
      quantize_phases(result.phases, *opts.quantization_order, opts.literal_quantization_distance);
  const ComplexVector u_quant = reflection_from_phases(quantized);
  result.phases = quantized;
  result.quantized_objective =
      weighted_sum_rate(result.beamformer, u_quant, channels, config);
  result.final_objective = *result.quantized_objective;
  result.gamma = update_gamma(result.beamformer, u_quant, channels, config);
}

}  // namespace

void DmaoOptions::validate() const {
  if (outer_max_iters <= 0) throw ConfigError("solver.outer_max_iters: must be positive");
  if (!(outer_rel_tol > 0.0)) throw ConfigError("solver.outer_rel_tol: must be positive");
  beamformer_solver.validate();
  reflection_solver.validate();
  if (quantization_order && *quantization_order < 2)
    throw ConfigError("solver.quantization_order: must be >= 2 when set");
}

RealVector quantize_phases(const RealVector& theta, int order, bool literal_distance) {
  if (order < 2) throw DomainError("quantize_phases: order must be >= 2");
  RealVector out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    double t = std::fmod(theta[i], kTwoPi);
    if (t < 0.0) t += kTwoPi;
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int q = 0; q < order; ++q) {
      const double level = kTwoPi * q / order;
      double dist = std::abs(t - level);
      if (!literal_distance) dist = std::min(dist, kTwoPi - dist);
      if (dist < best_dist) {  // ties keep the earlier, smaller level
        best_dist = dist;
        best = q;
      }
    }
    out[i] = kTwoPi * best / order;
  }
  return out;
}

SolveResult dmao(const ChannelSet& channels, const SystemConfig& config, const DmaoOptions& opts,
                 std::mt19937_64& rng) {
  config.validate();
  opts.validate();
  const OuterLoop loop(opts);
  const double power = config.max_power_watts;

  const SphereManifold sphere(config.num_bs_antennas + 1, config.num_users);
  const ObliqueManifold oblique(config.total_elements());

  ComplexMatrix vhat = sphere.random_point(rng);
  ComplexVector u = oblique.random_point(rng);

  SolveResult result;
  const auto sphere_audit = loop.auditor(sphere, result);
  const auto oblique_audit = loop.auditor(oblique, result);

  double objective = weighted_sum_rate(extract(vhat, power), u, channels, config);
  result.objective_trace.push_back(objective);

  for (int outer = 0; outer < opts.outer_max_iters; ++outer) {
    const RealVector gamma = update_gamma(extract(vhat, power), u, channels, config);
    const RealVector gtil = gamma_tilde(gamma, config.weights);

    {
      // Beamformer pass on the sphere; the effective rows are fixed while u is.
      const ComplexMatrix eff = effective_channel_rows(u, channels);
      ComplexMatrix rows(eff.rows(), eff.cols() + 1);
      rows.leftCols(eff.cols()) = std::sqrt(power) * eff;
      rows.rightCols(1).setZero();
      auto cost = [&](const ComplexMatrix& point) {
        return eval_f3_given_rows(rows, point, gtil, config.noise_power_watts);
      };
      auto grad = [&](const ComplexMatrix& point) {
        return sphere.project(
            point, egrad_beamformer_given_rows(rows, point, gtil, config.noise_power_watts));
      };
      auto [solved, trace] =
          rcg_maximize(cost, grad, sphere, std::move(vhat), opts.beamformer_solver, sphere_audit);
      vhat = std::move(solved);
      result.inner_iterations_beamformer += trace.iterations_used;
    }

    const ComplexMatrix beamformer = extract(vhat, power);
    {
      // Phase pass on the oblique manifold; the reflected columns are fixed while V is.
      const std::vector<ComplexMatrix> cols = reflected_columns(beamformer, channels);
      auto cost = [&](const ComplexVector& point) {
        return eval_f5_given_cols(cols, point, gtil, config.noise_power_watts);
      };
      auto grad = [&](const ComplexVector& point) {
        return oblique.project(
            point, egrad_reflection_given_cols(cols, point, gtil, config.noise_power_watts));
      };
      auto [solved, trace] =
          rcg_maximize(cost, grad, oblique, std::move(u), opts.reflection_solver, oblique_audit);
      u = std::move(solved);
      result.inner_iterations_reflection += trace.iterations_used;
    }

    const double next = weighted_sum_rate(beamformer, u, channels, config);
    result.objective_trace.push_back(next);
    result.outer_iterations = outer + 1;
    const bool done = converged(next, objective, opts.outer_rel_tol);
    objective = next;
    if (done) break;
  }

  result.beamformer = extract(vhat, power);
  result.gamma = update_gamma(result.beamformer, u, channels, config);
  apply_quantization(result, u, channels, config, opts);

  if (opts.quantization_order && opts.reoptimize_after_quantization) {
    // One more beamformer pass against the quantized phases.
    const ComplexVector u_quant = reflection_from_phases(result.phases);
    const RealVector gamma = update_gamma(result.beamformer, u_quant, channels, config);
    const RealVector gtil = gamma_tilde(gamma, config.weights);
    const ComplexMatrix eff = effective_channel_rows(u_quant, channels);
    ComplexMatrix rows(eff.rows(), eff.cols() + 1);
    rows.leftCols(eff.cols()) = std::sqrt(power) * eff;
    rows.rightCols(1).setZero();
    auto cost = [&](const ComplexMatrix& point) {
      return eval_f3_given_rows(rows, point, gtil, config.noise_power_watts);
    };
    auto grad = [&](const ComplexMatrix& point) {
      return sphere.project(
          point, egrad_beamformer_given_rows(rows, point, gtil, config.noise_power_watts));
    };
    auto [solved, trace] =
        rcg_maximize(cost, grad, sphere, std::move(vhat), opts.beamformer_solver, sphere_audit);
    vhat = std::move(solved);
    result.inner_iterations_beamformer += trace.iterations_used;
    result.beamformer = extract(vhat, power);
    result.quantized_objective = weighted_sum_rate(result.beamformer, u_quant, channels, config);
    result.final_objective = *result.quantized_objective;
    result.gamma = update_gamma(result.beamformer, u_quant, channels, config);
  }

  loop.finish(result);
  return result;
}

SolveResult baseline_random(const ChannelSet& channels, const SystemConfig& config,
                            const DmaoOptions& opts, std::mt19937_64& rng) {
  config.validate();
  opts.validate();
  const OuterLoop loop(opts);
  const double power = config.max_power_watts;

  const SphereManifold sphere(config.num_bs_antennas + 1, config.num_users);
  const ObliqueManifold oblique(config.total_elements());

  const ComplexVector u = oblique.random_point(rng);
  ComplexMatrix vhat = sphere.random_point(rng);

  SolveResult result;
  const auto sphere_audit = loop.auditor(sphere, result);

  double objective = weighted_sum_rate(extract(vhat, power), u, channels, config);
  result.objective_trace.push_back(objective);

  const ComplexMatrix eff = effective_channel_rows(u, channels);
  ComplexMatrix rows(eff.rows(), eff.cols() + 1);
  rows.leftCols(eff.cols()) = std::sqrt(power) * eff;
  rows.rightCols(1).setZero();

  for (int outer = 0; outer < opts.outer_max_iters; ++outer) {
    const RealVector gamma = update_gamma(extract(vhat, power), u, channels, config);
    const RealVector gtil = gamma_tilde(gamma, config.weights);
    auto cost = [&](const ComplexMatrix& point) {
      return eval_f3_given_rows(rows, point, gtil, config.noise_power_watts);
    };
    auto grad = [&](const ComplexMatrix& point) {
      return sphere.project(
          point, egrad_beamformer_given_rows(rows, point, gtil, config.noise_power_watts));
    };
    auto [solved, trace] =
        rcg_maximize(cost, grad, sphere, std::move(vhat), opts.beamformer_solver, sphere_audit);
    vhat = std::move(solved);
    result.inner_iterations_beamformer += trace.iterations_used;

    const double next = weighted_sum_rate(extract(vhat, power), u, channels, config);
    result.objective_trace.push_back(next);
    result.outer_iterations = outer + 1;
    const bool done = converged(next, objective, opts.outer_rel_tol);
    objective = next;
    if (done) break;
  }

  result.beamformer = extract(vhat, power);
  result.gamma = update_gamma(result.beamformer, u, channels, config);
  result.phases = phases_from_reflection(u);
  result.final_objective = result.objective_trace.back();
  loop.finish(result);
  return result;
}

namespace {

/// Shared alternation for the closed-form beamformer baselines: rebuild V from
/// the current phases, refresh gamma, then optimize the phases.
SolveResult closed_form_alternation(
    const ChannelSet& channels, const SystemConfig& config, const DmaoOptions& opts,
    std::mt19937_64& rng, const std::function<ComplexMatrix(const ComplexMatrix&)>& make_beamformer) {
  config.validate();
  opts.validate();
  const OuterLoop loop(opts);
  const ObliqueManifold oblique(config.total_elements());

  ComplexVector u = oblique.random_point(rng);
  ComplexMatrix beamformer = make_beamformer(effective_channel_rows(u, channels));

  SolveResult result;
  const auto oblique_audit = loop.auditor(oblique, result);

  double objective = weighted_sum_rate(beamformer, u, channels, config);
  result.objective_trace.push_back(objective);

  for (int outer = 0; outer < opts.outer_max_iters; ++outer) {
    beamformer = make_beamformer(effective_channel_rows(u, channels));
    const RealVector gamma = update_gamma(beamformer, u, channels, config);
    const RealVector gtil = gamma_tilde(gamma, config.weights);

    const std::vector<ComplexMatrix> cols = reflected_columns(beamformer, channels);
    auto cost = [&](const ComplexVector& point) {
      return eval_f5_given_cols(cols, point, gtil, config.noise_power_watts);
    };
    auto grad = [&](const ComplexVector& point) {
      return oblique.project(
          point, egrad_reflection_given_cols(cols, point, gtil, config.noise_power_watts));
    };
    auto [solved, trace] =
        rcg_maximize(cost, grad, oblique, std::move(u), opts.reflection_solver, oblique_audit);
    u = std::move(solved);
    result.inner_iterations_reflection += trace.iterations_used;

    const double next = weighted_sum_rate(beamformer, u, channels, config);
    result.objective_trace.push_back(next);
    result.outer_iterations = outer + 1;
    const bool done = converged(next, objective, opts.outer_rel_tol);
    objective = next;
    if (done) break;
  }

  result.beamformer = std::move(beamformer);
  result.gamma = update_gamma(result.beamformer, u, channels, config);
  result.phases = phases_from_reflection(u);
  result.final_objective = result.objective_trace.back();
  loop.finish(result);
  return result;
}

}  // namespace

ComplexMatrix mrt_beamformer(const ComplexMatrix& eff_rows, double power) {
  const double energy = eff_rows.squaredNorm();
  if (!(energy > 0.0))
    throw SingularChannelError("mrt_beamformer: effective channel is identically zero");
  return std::sqrt(power / energy) * eff_rows.adjoint();
}

ComplexMatrix zf_beamformer(const ComplexMatrix& eff_rows, double power) {
  const Eigen::Index num_users = eff_rows.rows();
  if (num_users > eff_rows.cols())
    throw SingularChannelError("zf_beamformer: more users than antennas");
  const Eigen::JacobiSVD<ComplexMatrix> svd(eff_rows);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > kZfConditionLimit)
    throw SingularChannelError("zf_beamformer: effective channel is rank-deficient");
  const ComplexMatrix gram = eff_rows * eff_rows.adjoint();  // K x K, Hermitian p.d.
  const ComplexMatrix gram_inv =
      gram.llt().solve(ComplexMatrix::Identity(num_users, num_users));
  const double trace_inv = gram_inv.trace().real();
  return std::sqrt(power / trace_inv) * eff_rows.adjoint() * gram_inv;
}

SolveResult baseline_mrt(const ChannelSet& channels, const SystemConfig& config,
                         const DmaoOptions& opts, std::mt19937_64& rng) {
  return closed_form_alternation(channels, config, opts, rng, [&](const ComplexMatrix& eff) {
    return mrt_beamformer(eff, config.max_power_watts);
  });
}

SolveResult baseline_zf(const ChannelSet& channels, const SystemConfig& config,
                        const DmaoOptions& opts, std::mt19937_64& rng) {
  return closed_form_alternation(channels, config, opts, rng, [&](const ComplexMatrix& eff) {
    return zf_beamformer(eff, config.max_power_watts);
  });
}

}  // namespace irsopt
