// SPDX-License-Identifier: Apache-2.0
#include "irsopt/objective.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace irsopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_reflection(const ComplexVector& u, const ChannelSet& channels) {
  if (u.size() != channels.total_elements())
    throw DimensionError("reflection vector has length " + std::to_string(u.size()) +
                         ", expected " + std::to_string(channels.total_elements()));
}

void check_beamformer(const ComplexMatrix& v, const ChannelSet& channels, int num_users) {
  if (v.rows() != channels.num_bs_antennas() || v.cols() != num_users)
    throw DimensionError("beamformer has shape " + std::to_string(v.rows()) + "x" +
                         std::to_string(v.cols()) + ", expected " +
                         std::to_string(channels.num_bs_antennas()) + "x" +
                         std::to_string(num_users));
}

void check_beamformer_aug(const ComplexMatrix& vhat, const ChannelSet& channels, int num_users) {
  if (vhat.rows() != channels.num_bs_antennas() + 1 || vhat.cols() != num_users)
    throw DimensionError("augmented beamformer has shape " + std::to_string(vhat.rows()) + "x" +
                         std::to_string(vhat.cols()) + ", expected " +
                         std::to_string(channels.num_bs_antennas() + 1) + "x" +
                         std::to_string(num_users));
}

/// sqrt(P) [eff_rows, 0], the K x (N+1) rows seen by the augmented variables.
ComplexMatrix augmented_rows(const ComplexVector& u, const ChannelSet& channels, double power) {
  const ComplexMatrix eff = effective_channel_rows(u, channels);
  ComplexMatrix rows(eff.rows(), eff.cols() + 1);
  rows.leftCols(eff.cols()) = std::sqrt(power) * eff;
  rows.rightCols(1).setZero();
  return rows;
}

}  // namespace

RealVector phases_from_reflection(const ComplexVector& u) {
  RealVector theta(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    double t = -std::arg(u[i]);  // Phi_ii = conj(u_i) = e^{j theta_i}
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    theta[i] = t;
  }
  return theta;
}

ComplexVector reflection_from_phases(const RealVector& theta) {
  ComplexVector u(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) u[i] = std::polar(1.0, -theta[i]);
  return u;
}

ComplexRowVector effective_channel(int user, const ComplexVector& u, const ChannelSet& channels) {
  check_reflection(u, channels);
  if (user < 0 || user >= channels.num_users())
    throw DimensionError("effective_channel: user index out of range");
  // u^H diag(g_k^H) H = (conj(u) .* g_k^H) H
  const ComplexRowVector weighted =
      channels.irs_to_user.row(user).cwiseProduct(u.conjugate().transpose());
  return weighted * channels.bs_to_irs;
}

ComplexMatrix effective_channel_rows(const ComplexVector& u, const ChannelSet& channels) {
  check_reflection(u, channels);
  const ComplexMatrix weighted =
      channels.irs_to_user.array().rowwise() * u.conjugate().transpose().array();
  return weighted * channels.bs_to_irs;
}

double sinr(int user, const ComplexMatrix& beamformer, const ComplexVector& u,
            const ChannelSet& channels, const SystemConfig& config) {
  check_beamformer(beamformer, channels, config.num_users);
  const ComplexRowVector row = effective_channel(user, u, channels);
  const ComplexRowVector gains = row * beamformer;
  double interference = 0.0;
  for (int j = 0; j < config.num_users; ++j)
    if (j != user) interference += std::norm(gains[j]);
  return std::norm(gains[user]) / (interference + config.noise_power_watts[user]);
}

double weighted_sum_rate(const ComplexMatrix& beamformer, const ComplexVector& u,
                         const ChannelSet& channels, const SystemConfig& config) {
  double total = 0.0;
  for (int k = 0; k < config.num_users; ++k)
    total += config.weights[k] * std::log1p(sinr(k, beamformer, u, channels, config));
  return total / std::numbers::ln2;
}

RealVector update_gamma(const ComplexMatrix& beamformer, const ComplexVector& u,
                        const ChannelSet& channels, const SystemConfig& config) {
  RealVector gamma(config.num_users);
  for (int k = 0; k < config.num_users; ++k) gamma[k] = sinr(k, beamformer, u, channels, config);
  return gamma;
}

double eval_f2(const ComplexMatrix& beamformer, const ComplexVector& u, const RealVector& gamma,
               const ChannelSet& channels, const SystemConfig& config) {
  double total = 0.0;
  for (int k = 0; k < config.num_users; ++k) {
    const double r = sinr(k, beamformer, u, channels, config);
    const double w = config.weights[k];
    total += w * (std::log1p(gamma[k]) - gamma[k] + (1.0 + gamma[k]) * r / (1.0 + r));
  }
  return total / std::numbers::ln2;
}

RealVector gamma_tilde(const RealVector& gamma, const RealVector& weights) {
  return weights.cwiseProduct(RealVector::Ones(gamma.size()) + gamma);
}

double eval_f3_given_rows(const ComplexMatrix& eff_rows_aug, const ComplexMatrix& beamformer_aug,
                          const RealVector& gtil, const RealVector& noise_power) {
  const ComplexMatrix gains = eff_rows_aug * beamformer_aug;  // gains(k, j) = row_k vhat_j
  double total = 0.0;
  for (Eigen::Index k = 0; k < gains.rows(); ++k) {
    const double desired = std::norm(gains(k, k));
    const double denom = gains.row(k).squaredNorm() + noise_power[k];
    total += gtil[k] * desired / denom;
  }
  return total;
}

ComplexMatrix egrad_beamformer_given_rows(const ComplexMatrix& eff_rows_aug,
                                          const ComplexMatrix& beamformer_aug,
                                          const RealVector& gtil, const RealVector& noise_power) {
  const Eigen::Index num_users = eff_rows_aug.rows();
  const ComplexMatrix gains = eff_rows_aug * beamformer_aug;
  // Each user contributes the rank-one term row_k^H * coeff_k with
  // coeff_k = (2 gtil_k / denom_k) * (gains_kk e_k^T - (desired_k/denom_k) gains_k).
  ComplexMatrix coeff = ComplexMatrix::Zero(num_users, num_users);
  for (Eigen::Index k = 0; k < num_users; ++k) {
    const double desired = std::norm(gains(k, k));
    const double denom = gains.row(k).squaredNorm() + noise_power[k];
    const double scale = 2.0 * gtil[k] / denom;
    coeff.row(k) = -scale * (desired / denom) * gains.row(k);
    coeff(k, k) += scale * gains(k, k);
  }
  return eff_rows_aug.adjoint() * coeff;
}

std::vector<ComplexMatrix> reflected_columns(const ComplexMatrix& beamformer,
                                             const ChannelSet& channels) {
  const ComplexMatrix propagated = channels.bs_to_irs * beamformer;  // SM x K
  std::vector<ComplexMatrix> cols(channels.num_users());
  for (int k = 0; k < channels.num_users(); ++k)
    cols[k] = channels.irs_to_user.row(k).transpose().asDiagonal() * propagated;
  return cols;
}

double eval_f5_given_cols(const std::vector<ComplexMatrix>& reflected_cols, const ComplexVector& u,
                          const RealVector& gtil, const RealVector& noise_power) {
  double total = 0.0;
  for (std::size_t k = 0; k < reflected_cols.size(); ++k) {
    const ComplexRowVector gains = u.adjoint() * reflected_cols[k];
    const double desired = std::norm(gains[static_cast<Eigen::Index>(k)]);
    const double denom = gains.squaredNorm() + noise_power[static_cast<Eigen::Index>(k)];
    total += gtil[static_cast<Eigen::Index>(k)] * desired / denom;
  }
  return total;
}

ComplexVector egrad_reflection_given_cols(const std::vector<ComplexMatrix>& reflected_cols,
                                          const ComplexVector& u, const RealVector& gtil,
                                          const RealVector& noise_power) {
  ComplexVector grad = ComplexVector::Zero(u.size());
  for (std::size_t k = 0; k < reflected_cols.size(); ++k) {
    const Eigen::Index kk = static_cast<Eigen::Index>(k);
    const ComplexMatrix& cols = reflected_cols[k];
    const ComplexRowVector gains = u.adjoint() * cols;
    const double desired = std::norm(gains[kk]);
    const double denom = gains.squaredNorm() + noise_power[kk];
    const double scale = 2.0 * gtil[kk] / denom;
    grad.noalias() += scale * std::conj(gains[kk]) * cols.col(kk);
    grad.noalias() -= scale * (desired / denom) * (cols * gains.adjoint());
  }
  return grad;
}

double eval_f3(const ComplexMatrix& beamformer_aug, const ComplexVector& u,
               const RealVector& gamma, const ChannelSet& channels, const SystemConfig& config) {
  check_beamformer_aug(beamformer_aug, channels, config.num_users);
  return eval_f3_given_rows(augmented_rows(u, channels, config.max_power_watts), beamformer_aug,
                            gamma_tilde(gamma, config.weights), config.noise_power_watts);
}

double eval_f5(const ComplexVector& u, const ComplexMatrix& beamformer, const RealVector& gamma,
               const ChannelSet& channels, const SystemConfig& config) {
  check_beamformer(beamformer, channels, config.num_users);
  check_reflection(u, channels);
  return eval_f5_given_cols(reflected_columns(beamformer, channels), u,
                            gamma_tilde(gamma, config.weights), config.noise_power_watts);
}

ComplexMatrix egrad_beamformer(const ComplexMatrix& beamformer_aug, const ComplexVector& u,
                               const RealVector& gamma, const ChannelSet& channels,
                               const SystemConfig& config) {
  check_beamformer_aug(beamformer_aug, channels, config.num_users);
  return egrad_beamformer_given_rows(augmented_rows(u, channels, config.max_power_watts),
                                     beamformer_aug, gamma_tilde(gamma, config.weights),
                                     config.noise_power_watts);
}

ComplexVector egrad_reflection(const ComplexVector& u, const ComplexMatrix& beamformer,
                               const RealVector& gamma, const ChannelSet& channels,
                               const SystemConfig& config) {
  check_beamformer(beamformer, channels, config.num_users);
  check_reflection(u, channels);
  return egrad_reflection_given_cols(reflected_columns(beamformer, channels), u,
                                     gamma_tilde(gamma, config.weights),
                                     config.noise_power_watts);
}

ComplexMatrix augment(const ComplexMatrix& beamformer, double power) {
  if (!(power > 0.0)) throw DomainError("augment: power must be positive");
  const double used = beamformer.squaredNorm() / power;
  if (used > 1.0 + 1e-12)
    throw InfeasiblePointError("augment: beamformer power " +
                               std::to_string(beamformer.squaredNorm()) +
                               " exceeds the budget " + std::to_string(power));
  const Eigen::Index cols = beamformer.cols();
  ComplexMatrix aug(beamformer.rows() + 1, cols);
  aug.topRows(beamformer.rows()) = beamformer / std::sqrt(power);
  const double slack = std::max(0.0, 1.0 - used);
  aug.bottomRows(1).setConstant(std::sqrt(slack / static_cast<double>(cols)));
  return aug;
}

ComplexMatrix extract(const ComplexMatrix& beamformer_aug, double power) {
  if (!(power > 0.0)) throw DomainError("extract: power must be positive");
  if (beamformer_aug.rows() < 2)
    throw DimensionError("extract: augmented beamformer needs at least two rows");
  return std::sqrt(power) * beamformer_aug.topRows(beamformer_aug.rows() - 1);
}

}  // namespace irsopt
