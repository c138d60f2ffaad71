// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>

namespace irsopt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;

/// Shapes of two operands disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar argument lies outside its admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A retraction hit a point where the rescaling denominator vanishes.
class DegenerateRetractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point violates its manifold or power constraint beyond tolerance.
class InfeasiblePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The effective channel is too ill-conditioned for a closed-form beamformer.
class SingularChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar system parameters shared by the objective, the driver and the
/// experiment harness. Powers are linear watts; dBm is converted at the
/// configuration boundary only.
struct SystemConfig {
  int num_bs_antennas = 20;   // N
  int elements_per_irs = 20;  // M
  int num_irs = 2;            // S
  int num_users = 4;          // K
  double max_power_watts = 1.0;
  RealVector noise_power_watts;  // per-user sigma_k^2, length K
  RealVector weights;            // per-user service priority omega_k, length K
  std::optional<int> quantization_order;  // nullopt = continuous phases

  int total_elements() const { return num_irs * elements_per_irs; }
  void validate() const;
};

/// One channel realization: the stacked BS->IRS matrix and the per-user
/// IRS->user rows, plus the noise powers they were generated with.
struct ChannelSet {
  ComplexMatrix bs_to_irs;       // SM x N, one M x N block per IRS, stacked vertically
  ComplexMatrix irs_to_user;     // K x SM, row k holds the concatenated g_k^H
  RealVector noise_power_watts;  // sigma_k^2, length K

  int total_elements() const { return static_cast<int>(bs_to_irs.rows()); }
  int num_bs_antennas() const { return static_cast<int>(bs_to_irs.cols()); }
  int num_users() const { return static_cast<int>(irs_to_user.rows()); }
};

RealVector uniform_weights(int num_users);

double dbm_to_watts(double dbm);

}  // namespace irsopt
