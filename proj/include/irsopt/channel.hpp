// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "irsopt/types.hpp"

namespace irsopt {

/// Free-space propagation constant used by the path-loss law, m/s.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Uniform planar array: R rows by C columns, element spacing in wavelengths.
struct ArrayGeometry {
  int rows = 1;
  int cols = 1;
  double spacing = 0.5;  // d / lambda

  int size() const { return rows * cols; }
  void validate() const;
};

/// Per-path parameters of one link; index 0 is the line-of-sight path and the
/// remaining entries are scattered paths. Angles are radians in [0, 2pi).
struct PathParams {
  std::vector<Complex> gains;        // alpha_l, length L+1
  std::vector<double> azimuth_rx;    // arrival azimuth per path
  std::vector<double> elevation_rx;  // arrival elevation per path
  std::vector<double> azimuth_tx;    // departure azimuth per path
  std::vector<double> elevation_tx;  // departure elevation per path

  int num_paths() const { return static_cast<int>(gains.size()); }
};

/// Node placement for one deployment, 2-D coordinates in meters. Defaults
/// describe the reference scenario: BS at the origin, two reflecting surfaces,
/// users drawn uniformly from a disc.
struct ScenarioGeometry {
  Eigen::Vector2d bs_position{0.0, 0.0};
  std::vector<Eigen::Vector2d> irs_positions{{10.0, 24.0}, {24.0, 10.0}};
  Eigen::Vector2d user_center{20.0, 0.0};
  double user_radius = 2.0;
  double carrier_hz = 3.0e9;
  int num_nlos_paths = 3;  // L

  void validate() const;
};

/// Planar-array steering vector: Kronecker product of the row factor
/// (exponents ~ r*sin(azimuth)*sin(elevation)) and the column factor
/// (exponents ~ c*cos(elevation)), scaled by 1/sqrt(R*C). Unit Euclidean norm.
ComplexVector steering_vector(double azimuth, double elevation, const ArrayGeometry& geom);

/// (4 pi f D / c)^2, dimensionless. Throws DomainError for distance <= 0.
double path_loss(double distance_m, double carrier_hz);

/// Draws gains and angles for one link: LoS gain CN(0, 2), the `num_nlos`
/// scattered gains CN(0, 0.4), all angles i.i.d. uniform on [0, 2pi).
/// Draw order per path: gain (re, im), then azimuth_rx, elevation_rx,
/// azimuth_tx, elevation_tx.
PathParams sample_paths(int num_nlos, std::mt19937_64& rng);

/// BS->IRS channel, size(irs_array) x size(bs_array):
/// sqrt(N*M/rho) * sum_l alpha_l * a_irs(rx angles) * a_bs(tx angles)^H.
ComplexMatrix gen_channel_bs_irs(const PathParams& paths, const ArrayGeometry& bs_array,
                                 const ArrayGeometry& irs_array, double rho_bi);

/// IRS->user channel row, 1 x size(irs_array):
/// sqrt(M/rho) * sum_l alpha_l * a_irs(rx angles)^H.
ComplexRowVector gen_channel_irs_user(const PathParams& paths, const ArrayGeometry& irs_array,
                                      double rho_iu);

/// Array factorizations used by the experiments: rows fixed at 2, so the
/// element count must be even.
ArrayGeometry bs_array_geometry(int num_antennas);
ArrayGeometry irs_array_geometry(int num_elements);

/// Draws one full channel realization: K user positions uniform over the
/// disc, then per-IRS BS->IRS channels, then per-(IRS, user) rows, assembled
/// into the stacked matrices. S*(K+1) independent path draws in that order.
ChannelSet sample_scenario(const ScenarioGeometry& geometry, const SystemConfig& config,
                           std::mt19937_64& rng);

}  // namespace irsopt
