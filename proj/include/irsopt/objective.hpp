// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "irsopt/types.hpp"

namespace irsopt {

// The reflection state is carried as the oblique-manifold point u with
// Phi = diag(conj(u)); equivalently theta_i = -arg(u_i) mod 2pi. Beamformers
// come in two flavors: the physical V (N x K, tr(VV^H) <= P) and the
// augmented unit-Frobenius point V_hat ((N+1) x K) whose extra row absorbs
// the unused transmit power.

/// theta in [0, 2pi) with diag(e^{j theta}) the reflection matrix of `u`.
RealVector phases_from_reflection(const ComplexVector& u);

/// Inverse of phases_from_reflection: u_i = e^{-j theta_i}.
ComplexVector reflection_from_phases(const RealVector& theta);

/// Row k of the effective BS->user channel, u^H diag(g_k^H) H, length N.
ComplexRowVector effective_channel(int user, const ComplexVector& u, const ChannelSet& channels);

/// All K effective rows stacked, K x N.
ComplexMatrix effective_channel_rows(const ComplexVector& u, const ChannelSet& channels);

/// SINR of one user for a physical beamformer: desired power over interference
/// from the other users' columns plus noise.
double sinr(int user, const ComplexMatrix& beamformer, const ComplexVector& u,
            const ChannelSet& channels, const SystemConfig& config);

/// sum_k weight_k * log2(1 + sinr_k), bits/s/Hz.
double weighted_sum_rate(const ComplexMatrix& beamformer, const ComplexVector& u,
                         const ChannelSet& channels, const SystemConfig& config);

/// Optimal auxiliary variables for the current operating point: gamma_k = sinr_k.
RealVector update_gamma(const ComplexMatrix& beamformer, const ComplexVector& u,
                        const ChannelSet& channels, const SystemConfig& config);

/// Fractional-programming surrogate of the weighted sum-rate. A single 1/ln 2
/// scaling keeps both properties that define it: its maximizer over gamma is
/// gamma_k = sinr_k, and its value there equals weighted_sum_rate.
double eval_f2(const ComplexMatrix& beamformer, const ComplexVector& u, const RealVector& gamma,
               const ChannelSet& channels, const SystemConfig& config);

/// Surrogate term that depends on the beamformer and phases, in the augmented
/// sphere variables: sum_k gtil_k |row_k vhat_k|^2 / (sum_j |row_k vhat_j|^2
/// + sigma_k^2) with row_k = sqrt(P) [eff_k, 0] and gtil_k = w_k (1+gamma_k).
double eval_f3(const ComplexMatrix& beamformer_aug, const ComplexVector& u,
               const RealVector& gamma, const ChannelSet& channels, const SystemConfig& config);

/// Same surrogate in the phase variables for a fixed physical beamformer.
/// Agrees with eval_f3 when beamformer = extract(beamformer_aug, P).
double eval_f5(const ComplexVector& u, const ComplexMatrix& beamformer, const RealVector& gamma,
               const ChannelSet& channels, const SystemConfig& config);

/// Euclidean gradient of eval_f3 in the augmented beamformer, (N+1) x K.
/// Convention: f(X + tD) ~ f(X) + t * Re tr(Egrad^H D).
ComplexMatrix egrad_beamformer(const ComplexMatrix& beamformer_aug, const ComplexVector& u,
                               const RealVector& gamma, const ChannelSet& channels,
                               const SystemConfig& config);

/// Euclidean gradient of eval_f5 in u, length SM. Same convention.
ComplexVector egrad_reflection(const ComplexVector& u, const ComplexMatrix& beamformer,
                               const RealVector& gamma, const ChannelSet& channels,
                               const SystemConfig& config);

/// Lifts a physical beamformer onto the unit sphere: scales by 1/sqrt(P) and
/// spreads the power slack evenly over the auxiliary row. Throws
/// InfeasiblePointError if tr(VV^H) > P.
ComplexMatrix augment(const ComplexMatrix& beamformer, double power);

/// First N rows of the augmented point rescaled by sqrt(P).
ComplexMatrix extract(const ComplexMatrix& beamformer_aug, double power);

// Precomputed-effective-channel forms shared with the driver's inner loops.
// `eff_rows_aug` is the K x (N+1) matrix whose row k is sqrt(P) [eff_k, 0];
// `eff_rows` is the K x N matrix of physical effective rows.

RealVector gamma_tilde(const RealVector& gamma, const RealVector& weights);

double eval_f3_given_rows(const ComplexMatrix& eff_rows_aug, const ComplexMatrix& beamformer_aug,
                          const RealVector& gtil, const RealVector& noise_power);

ComplexMatrix egrad_beamformer_given_rows(const ComplexMatrix& eff_rows_aug,
                                          const ComplexMatrix& beamformer_aug,
                                          const RealVector& gtil, const RealVector& noise_power);

/// `reflected_cols[k]` holds diag(g_k^H) * H * V, SM x K, fixed during a
/// phase-only solve.
double eval_f5_given_cols(const std::vector<ComplexMatrix>& reflected_cols, const ComplexVector& u,
                          const RealVector& gtil, const RealVector& noise_power);

ComplexVector egrad_reflection_given_cols(const std::vector<ComplexMatrix>& reflected_cols,
                                          const ComplexVector& u, const RealVector& gtil,
                                          const RealVector& noise_power);

std::vector<ComplexMatrix> reflected_columns(const ComplexMatrix& beamformer,
                                             const ChannelSet& channels);

}  // namespace irsopt
