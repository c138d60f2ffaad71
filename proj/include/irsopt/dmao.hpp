// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "irsopt/rcg.hpp"
#include "irsopt/types.hpp"

namespace irsopt {

/// Outer-loop controls for the alternating optimization and its baselines.
struct DmaoOptions {
  int outer_max_iters = 100;
  double outer_rel_tol = 1e-4;  // stop when |f - f_prev| <= tol * max(|f_prev|, eps)
  SolverOptions beamformer_solver{};
  SolverOptions reflection_solver{};
  std::optional<int> quantization_order;  // nullopt = continuous phases
  bool literal_quantization_distance = false;  // plain |theta - theta'| instead of circular
  bool reoptimize_after_quantization = false;  // rerun the beamformer pass on quantized phases
  bool audit_iterates = false;  // track the worst manifold violation across inner iterates

  void validate() const;
};

/// Output of one solve: the physical beamformer, the reflection phases, the
/// final auxiliary variables and the objective history.
struct SolveResult {
  ComplexMatrix beamformer;  // N x K, tr(VV^H) <= P
  RealVector phases;         // theta of Phi = diag(e^{j theta}); quantized when enabled
  RealVector gamma;
  std::vector<double> objective_trace;  // weighted sum-rate after each outer pass,
                                        // objective_trace[0] is the starting point,
                                        // always pre-quantization
  double final_objective = 0.0;         // operating-point rate; quantized when enabled
  std::optional<double> quantized_objective;  // set iff a finite order was applied
  int outer_iterations = 0;
  long inner_iterations_beamformer = 0;
  long inner_iterations_reflection = 0;
  double max_manifold_violation = 0.0;  // only tracked when audit_iterates is on
  double elapsed_seconds = 0.0;
};

/// Snaps each angle to the nearest of the `order` uniformly spaced levels
/// {0, 2pi/order, ...}. Distance is circular by default (nearest on the
/// circle); ties break toward the smaller angle. `literal_distance` uses the
/// plain |theta - theta'| instead, which mis-rounds angles near 2pi.
RealVector quantize_phases(const RealVector& theta, int order, bool literal_distance = false);

/// Alternating ascent: update gamma in closed form, then the beamformer on the
/// sphere manifold, then the phases on the oblique manifold, until the
/// weighted sum-rate stalls. With a finite quantization order the phases are
/// quantized once after convergence and the objective re-evaluated.
SolveResult dmao(const ChannelSet& channels, const SystemConfig& config, const DmaoOptions& opts,
                 std::mt19937_64& rng);

/// Phases drawn once uniformly at random and held fixed; only the beamformer
/// is optimized (with gamma alternation).
SolveResult baseline_random(const ChannelSet& channels, const SystemConfig& config,
                            const DmaoOptions& opts, std::mt19937_64& rng);

/// Beamformer set to the matched filter of the effective channel at full
/// power; phases optimized on the oblique manifold; alternated to convergence.
SolveResult baseline_mrt(const ChannelSet& channels, const SystemConfig& config,
                         const DmaoOptions& opts, std::mt19937_64& rng);

/// Beamformer set to the power-normalized pseudo-inverse of the effective
/// channel (zero inter-user interference); phases optimized; alternated.
/// Throws SingularChannelError when the effective channel is rank-deficient.
SolveResult baseline_zf(const ChannelSet& channels, const SystemConfig& config,
                        const DmaoOptions& opts, std::mt19937_64& rng);

/// sqrt(P / ||E||_F^2) * E^H for the stacked effective rows E (K x N).
ComplexMatrix mrt_beamformer(const ComplexMatrix& eff_rows, double power);

/// sqrt(P / tr((EE^H)^{-1})) * E^H (EE^H)^{-1}; throws SingularChannelError
/// when K > N or cond(E) > 1e12.
ComplexMatrix zf_beamformer(const ComplexMatrix& eff_rows, double power);

}  // namespace irsopt
