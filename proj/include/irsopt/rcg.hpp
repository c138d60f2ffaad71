// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <utility>
#include <vector>

#include "irsopt/types.hpp"

namespace irsopt {

/// Backtracking line-search and iteration controls for the conjugate-gradient
/// ascent. Defaults are standard backtracking constants.
struct SolverOptions {
  int max_iters = 200;
  double grad_tol = 1e-6;  // Riemannian gradient norm threshold; 0 disables
  double armijo_initial = 1.0;
  double armijo_contraction = 0.5;
  double armijo_slope = 1e-4;
  int armijo_max_backtracks = 50;

  void validate() const {
    if (max_iters <= 0) throw ConfigError("solver.max_iters: must be positive");
    if (!(grad_tol >= 0.0)) throw ConfigError("solver.grad_tol: must be nonnegative");
    if (!(armijo_initial > 0.0)) throw ConfigError("solver.armijo_initial: must be positive");
    if (!(armijo_contraction > 0.0 && armijo_contraction < 1.0))
      throw ConfigError("solver.armijo_contraction: must lie in (0, 1)");
    if (!(armijo_slope > 0.0 && armijo_slope < 1.0))
      throw ConfigError("solver.armijo_slope: must lie in (0, 1)");
    if (armijo_max_backtracks <= 0)
      throw ConfigError("solver.armijo_max_backtracks: must be positive");
  }
};

enum class TerminationReason { gradient_tol, max_iters, stalled_line_search };

inline const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::gradient_tol: return "gradient_tol";
    case TerminationReason::max_iters: return "max_iters";
    case TerminationReason::stalled_line_search: return "stalled_line_search";
  }
  return "unknown";
}

/// Per-iteration history of one solve. objective[0] is the starting value and
/// each accepted step appends one entry, so the sequence is non-decreasing.
struct SolveTrace {
  std::vector<double> objective;
  std::vector<double> grad_norm;
  int iterations_used = 0;
  TerminationReason termination = TerminationReason::max_iters;
};

struct ArmijoResult {
  double step = 0.0;
  double value = 0.0;  // cost at the accepted point; cost at base when stalled
  int backtracks = 0;
  bool stalled = false;
};

template <typename M>
concept RiemannianManifold = requires(const M& m, const typename M::Point& p, double a,
                                      std::mt19937_64& rng) {
  { m.project(p, p) } -> std::convertible_to<typename M::Point>;
  { m.retract(p, p, a) } -> std::convertible_to<typename M::Point>;
  { m.transport(p, p, p) } -> std::convertible_to<typename M::Point>;
  { m.inner(p, p) } -> std::convertible_to<double>;
  { m.random_point(rng) } -> std::convertible_to<typename M::Point>;
  { m.feasibility_error(p) } -> std::convertible_to<double>;
};

/// Largest step armijo_initial * contraction^m (m <= max_backtracks) whose
/// retracted cost gains at least armijo_slope * step * <gradient, direction>.
/// Requires an ascent direction; exhausting the backtrack budget returns step
/// 0 with `stalled` set.
template <RiemannianManifold M, typename Cost>
ArmijoResult armijo_step(Cost&& cost, const M& manifold, const typename M::Point& base,
                         const typename M::Point& direction, const typename M::Point& gradient,
                         const SolverOptions& opts) {
  opts.validate();
  const double slope = manifold.inner(gradient, direction);
  if (!(slope > 0.0))
    throw DomainError("armijo_step: direction is not an ascent direction at the base point");
  const double f0 = cost(base);
  double step = opts.armijo_initial;
  for (int m = 0; m <= opts.armijo_max_backtracks; ++m) {
    const double trial = cost(manifold.retract(base, direction, step));
    if (trial >= f0 + opts.armijo_slope * step * slope)
      return ArmijoResult{step, trial, m, false};
    step *= opts.armijo_contraction;
  }
  return ArmijoResult{0.0, f0, opts.armijo_max_backtracks, true};
}

/// Conjugate-gradient ascent of `cost` over `manifold` with Fletcher-Reeves
/// correction and Armijo backtracking.
///
/// `rgrad` must return tangent vectors at its argument (a projected Euclidean
/// gradient). The search direction is transported to each new point and reset
/// to the gradient whenever the update would stop being an ascent direction.
/// `observer`, when non-null, sees every accepted iterate.
template <RiemannianManifold M, typename Cost, typename Grad>
std::pair<typename M::Point, SolveTrace> rcg_maximize(
    Cost&& cost, Grad&& rgrad, const M& manifold, typename M::Point x, const SolverOptions& opts,
    const std::function<void(const typename M::Point&, int)>& observer = nullptr) {
  using Point = typename M::Point;
  opts.validate();
  if (manifold.feasibility_error(x) > 1e-8)
    throw InfeasiblePointError("rcg_maximize: initial point is off the manifold");

  SolveTrace trace;
  Point grad = rgrad(x);
  Point dir = grad;
  double grad_sq = manifold.inner(grad, grad);
  trace.objective.push_back(cost(x));
  trace.grad_norm.push_back(std::sqrt(grad_sq));
  if (observer) observer(x, 0);

  for (int t = 0; t < opts.max_iters; ++t) {
    if (std::sqrt(grad_sq) <= opts.grad_tol) {
      trace.termination = TerminationReason::gradient_tol;
      return {std::move(x), std::move(trace)};
    }
    if (manifold.inner(grad, dir) <= 0.0) dir = grad;

    const ArmijoResult line = armijo_step(cost, manifold, x, dir, grad, opts);
    if (line.stalled) {
      trace.termination = TerminationReason::stalled_line_search;
      return {std::move(x), std::move(trace)};
    }

    Point x_next = manifold.retract(x, dir, line.step);
    Point grad_next = rgrad(x_next);
    const double grad_sq_next = manifold.inner(grad_next, grad_next);
    const double beta = grad_sq_next / grad_sq;
    Point dir_next = grad_next + beta * manifold.transport(x, line.step * dir, dir);
    if (manifold.inner(grad_next, dir_next) <= 0.0) dir_next = grad_next;

    x = std::move(x_next);
    grad = std::move(grad_next);
    dir = std::move(dir_next);
    grad_sq = grad_sq_next;
    trace.objective.push_back(line.value);
    trace.grad_norm.push_back(std::sqrt(grad_sq));
    trace.iterations_used = t + 1;
    if (observer) observer(x, t + 1);
  }
  trace.termination = TerminationReason::max_iters;
  return {std::move(x), std::move(trace)};
}

}  // namespace irsopt
