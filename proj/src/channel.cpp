// SPDX-License-Identifier: Apache-2.0
#include "irsopt/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace irsopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex complex_gaussian(double variance, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

}  // namespace

void ArrayGeometry::validate() const {
  if (rows <= 0 || cols <= 0) throw ConfigError("array geometry: rows and cols must be positive");
  if (!(spacing > 0.0)) throw ConfigError("array geometry: spacing must be positive");
}

void ScenarioGeometry::validate() const {
  if (irs_positions.empty()) throw ConfigError("geometry.irs_positions: need at least one IRS");
  if (!(user_radius > 0.0)) throw ConfigError("geometry.user_radius: must be positive");
  if (!(carrier_hz > 0.0)) throw ConfigError("geometry.carrier_hz: must be positive");
  if (num_nlos_paths < 0) throw ConfigError("geometry.num_nlos_paths: must be nonnegative");
}

ComplexVector steering_vector(double azimuth, double elevation, const ArrayGeometry& geom) {
  geom.validate();
  const double row_phase = kTwoPi * geom.spacing * std::sin(azimuth) * std::sin(elevation);
  const double col_phase = kTwoPi * geom.spacing * std::cos(elevation);
  const double scale = 1.0 / std::sqrt(static_cast<double>(geom.size()));
  ComplexVector a(geom.size());
  for (int r = 0; r < geom.rows; ++r)
    for (int c = 0; c < geom.cols; ++c)
      a[r * geom.cols + c] = scale * std::polar(1.0, r * row_phase + c * col_phase);
  return a;
}

double path_loss(double distance_m, double carrier_hz) {
  if (!(distance_m > 0.0)) throw DomainError("path_loss: distance must be positive");
  if (!(carrier_hz > 0.0)) throw DomainError("path_loss: carrier frequency must be positive");
  const double ratio = 4.0 * std::numbers::pi * carrier_hz * distance_m / kSpeedOfLight;
  return ratio * ratio;
}

PathParams sample_paths(int num_nlos, std::mt19937_64& rng) {
  if (num_nlos < 0) throw DomainError("sample_paths: path count must be nonnegative");
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  PathParams p;
  const int total = num_nlos + 1;
  p.gains.reserve(total);
  p.azimuth_rx.reserve(total);
  p.elevation_rx.reserve(total);
  p.azimuth_tx.reserve(total);
  p.elevation_tx.reserve(total);
  for (int l = 0; l < total; ++l) {
    p.gains.push_back(complex_gaussian(l == 0 ? 2.0 : 0.4, rng));
    p.azimuth_rx.push_back(angle(rng));
    p.elevation_rx.push_back(angle(rng));
    p.azimuth_tx.push_back(angle(rng));
    p.elevation_tx.push_back(angle(rng));
  }
  return p;
}

ComplexMatrix gen_channel_bs_irs(const PathParams& paths, const ArrayGeometry& bs_array,
                                 const ArrayGeometry& irs_array, double rho_bi) {
  bs_array.validate();
  irs_array.validate();
  if (!(rho_bi > 0.0)) throw DomainError("gen_channel_bs_irs: path loss must be positive");
  const int n = bs_array.size();
  const int m = irs_array.size();
  ComplexMatrix h = ComplexMatrix::Zero(m, n);
  for (int l = 0; l < paths.num_paths(); ++l) {
    const ComplexVector rx = steering_vector(paths.azimuth_rx[l], paths.elevation_rx[l], irs_array);
    const ComplexVector tx = steering_vector(paths.azimuth_tx[l], paths.elevation_tx[l], bs_array);
    h.noalias() += paths.gains[l] * rx * tx.adjoint();
  }
  return std::sqrt(static_cast<double>(n) * m / rho_bi) * h;
}

ComplexRowVector gen_channel_irs_user(const PathParams& paths, const ArrayGeometry& irs_array,
                                      double rho_iu) {
  irs_array.validate();
  if (!(rho_iu > 0.0)) throw DomainError("gen_channel_irs_user: path loss must be positive");
  const int m = irs_array.size();
  ComplexRowVector g = ComplexRowVector::Zero(m);
  for (int l = 0; l < paths.num_paths(); ++l) {
    const ComplexVector rx = steering_vector(paths.azimuth_rx[l], paths.elevation_rx[l], irs_array);
    g += paths.gains[l] * rx.adjoint();
  }
  return std::sqrt(static_cast<double>(m) / rho_iu) * g;
}

ArrayGeometry bs_array_geometry(int num_antennas) {
  if (num_antennas <= 0 || num_antennas % 2 != 0)
    throw ConfigError("system.num_bs_antennas: must be even (array rows are fixed at 2), got " +
                      std::to_string(num_antennas));
  return ArrayGeometry{2, num_antennas / 2, 0.5};
}

ArrayGeometry irs_array_geometry(int num_elements) {
  if (num_elements <= 0 || num_elements % 2 != 0)
    throw ConfigError("system.elements_per_irs: must be even (array rows are fixed at 2), got " +
                      std::to_string(num_elements));
  return ArrayGeometry{2, num_elements / 2, 0.5};
}

ChannelSet sample_scenario(const ScenarioGeometry& geometry, const SystemConfig& config,
                           std::mt19937_64& rng) {
  geometry.validate();
  config.validate();
  const int num_irs = config.num_irs;
  if (static_cast<int>(geometry.irs_positions.size()) != num_irs)
    throw ConfigError("geometry.irs_positions: expected " + std::to_string(num_irs) +
                      " positions, got " + std::to_string(geometry.irs_positions.size()));

  const int n = config.num_bs_antennas;
  const int m = config.elements_per_irs;
  const int k = config.num_users;
  const ArrayGeometry bs_array = bs_array_geometry(n);
  const ArrayGeometry irs_array = irs_array_geometry(m);

  // User positions: uniform over the disc via sqrt-radius sampling.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::Vector2d> users(k);
  for (int i = 0; i < k; ++i) {
    const double radius = geometry.user_radius * std::sqrt(unit(rng));
    const double angle = kTwoPi * unit(rng);
    users[i] = geometry.user_center + radius * Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }

  ChannelSet channels;
  channels.bs_to_irs.resize(num_irs * m, n);
  channels.irs_to_user.resize(k, num_irs * m);
  channels.noise_power_watts = config.noise_power_watts;

  for (int s = 0; s < num_irs; ++s) {
    const double dist = (geometry.irs_positions[s] - geometry.bs_position).norm();
    const double rho_bi = path_loss(dist, geometry.carrier_hz);
    const PathParams paths = sample_paths(geometry.num_nlos_paths, rng);
    channels.bs_to_irs.middleRows(s * m, m) = gen_channel_bs_irs(paths, bs_array, irs_array, rho_bi);
  }
  for (int s = 0; s < num_irs; ++s) {
    for (int u = 0; u < k; ++u) {
      const double dist = (users[u] - geometry.irs_positions[s]).norm();
      const double rho_iu = path_loss(dist, geometry.carrier_hz);
      const PathParams paths = sample_paths(geometry.num_nlos_paths, rng);
      channels.irs_to_user.block(u, s * m, 1, m) = gen_channel_irs_user(paths, irs_array, rho_iu);
    }
  }
  return channels;
}

}  // namespace irsopt
