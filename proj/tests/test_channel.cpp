// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irsopt/channel.hpp"
#include "irsopt/rng.hpp"
#include "test_support.hpp"

using namespace irsopt;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force path-sum oracle: entrywise double loop over array elements,
// independent of the Eigen assembly in the implementation.
ComplexMatrix bs_irs_oracle(const PathParams& p, const ArrayGeometry& bs,
                            const ArrayGeometry& irs, double rho) {
  const int m = irs.size();
  const int n = bs.size();
  ComplexMatrix h = ComplexMatrix::Zero(m, n);
  for (int l = 0; l < p.num_paths(); ++l) {
    for (int mi = 0; mi < m; ++mi) {
      const int mr = mi / irs.cols;
      const int mc = mi % irs.cols;
      const double rx_phase =
          2 * kPi * irs.spacing *
          (mr * std::sin(p.azimuth_rx[l]) * std::sin(p.elevation_rx[l]) +
           mc * std::cos(p.elevation_rx[l]));
      for (int ni = 0; ni < n; ++ni) {
        const int nr = ni / bs.cols;
        const int nc = ni % bs.cols;
        const double tx_phase =
            2 * kPi * bs.spacing *
            (nr * std::sin(p.azimuth_tx[l]) * std::sin(p.elevation_tx[l]) +
             nc * std::cos(p.elevation_tx[l]));
        h(mi, ni) += p.gains[l] * std::polar(1.0, rx_phase) * std::polar(1.0, -tx_phase) /
                     std::sqrt(static_cast<double>(m) * n);
      }
    }
  }
  return std::sqrt(static_cast<double>(n) * m / rho) * h;
}

ComplexRowVector irs_user_oracle(const PathParams& p, const ArrayGeometry& irs, double rho) {
  const int m = irs.size();
  ComplexRowVector g = ComplexRowVector::Zero(m);
  for (int l = 0; l < p.num_paths(); ++l) {
    for (int mi = 0; mi < m; ++mi) {
      const int mr = mi / irs.cols;
      const int mc = mi % irs.cols;
      const double rx_phase =
          2 * kPi * irs.spacing *
          (mr * std::sin(p.azimuth_rx[l]) * std::sin(p.elevation_rx[l]) +
           mc * std::cos(p.elevation_rx[l]));
      g[mi] += p.gains[l] * std::polar(1.0, -rx_phase) / std::sqrt(static_cast<double>(m));
    }
  }
  return std::sqrt(static_cast<double>(m) / rho) * g;
}

}  // namespace

TEST_CASE("steering vector analytic cases") {
  // all exponents vanish at azimuth 0, elevation pi/2
  const ComplexVector flat = steering_vector(0.0, kPi / 2, ArrayGeometry{2, 2, 0.5});
  for (int i = 0; i < 4; ++i) CHECK(std::abs(flat[i] - Complex(0.5, 0)) < 1e-15);

  const ComplexVector single = steering_vector(1.234, 0.567, ArrayGeometry{1, 1, 0.5});
  REQUIRE(single.size() == 1);
  CHECK(std::abs(single[0] - Complex(1, 0)) < 1e-15);

  // R=2 x C=1 endfire: phase step of pi gives [1, -1]/sqrt(2)
  const ComplexVector pair = steering_vector(kPi / 2, kPi / 2, ArrayGeometry{2, 1, 0.5});
  const double s = 1 / std::sqrt(2.0);
  CHECK(std::abs(pair[0] - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(pair[1] - Complex(-s, 0)) < 1e-12);
}

TEST_CASE("steering vectors have unit norm and 1/sqrt(RC) entries") {
  auto rng = make_rng(71);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (const auto& geom : {ArrayGeometry{2, 3, 0.5}, ArrayGeometry{4, 4, 0.5},
                           ArrayGeometry{1, 7, 0.25}, ArrayGeometry{3, 1, 0.7}}) {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexVector a = steering_vector(angle(rng), angle(rng), geom);
      CHECK(std::abs(a.norm() - 1.0) < 1e-12);
      const double expected = 1.0 / std::sqrt(static_cast<double>(geom.size()));
      for (Eigen::Index i = 0; i < a.size(); ++i)
        CHECK(std::abs(std::abs(a[i]) - expected) < 1e-12);
    }
  }
}

TEST_CASE("path loss formula") {
  const double f = 3e9;
  // formula inversion: at D = c/(4 pi f) the loss is exactly one
  const double d_unit = kSpeedOfLight / (4 * kPi * f);
  CHECK(path_loss(d_unit, f) == doctest::Approx(1.0).epsilon(1e-12));
  // square law
  CHECK(path_loss(50.0, f) == doctest::Approx(4.0 * path_loss(25.0, f)).epsilon(1e-12));
  // reference deployment: BS at origin, IRS at (10, 24) -> D = 26 m
  const double expected = std::pow(4 * kPi * f * 26.0 / kSpeedOfLight, 2);  // (1040 pi)^2
  CHECK(path_loss(26.0, f) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(1.0675e7).epsilon(1e-3));
  CHECK_THROWS_AS(path_loss(0.0, f), DomainError);
  CHECK_THROWS_AS(path_loss(-1.0, f), DomainError);
}

TEST_CASE("sample_paths: counts, moments, determinism") {
  auto rng = make_rng(73);
  const PathParams p0 = sample_paths(0, rng);
  CHECK(p0.num_paths() == 1);  // LoS only

  const PathParams p3 = sample_paths(3, rng);
  CHECK(p3.num_paths() == 4);
  CHECK(p3.azimuth_rx.size() == 4);
  for (double a : p3.azimuth_rx) CHECK((a >= 0 && a < 2 * kPi));
  for (double a : p3.elevation_tx) CHECK((a >= 0 && a < 2 * kPi));

  // Monte Carlo moment check: E|alpha_0|^2 = 2, E|alpha_l|^2 = 0.4
  auto mrng = make_rng(77);
  double los = 0.0;
  double nlos = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const PathParams p = sample_paths(1, mrng);
    los += std::norm(p.gains[0]);
    nlos += std::norm(p.gains[1]);
  }
  CHECK(std::abs(los / draws - 2.0) < 0.05);
  CHECK(std::abs(nlos / draws - 0.4) < 0.02);

  auto ra = make_rng(79);
  auto rb = make_rng(79);
  const PathParams pa = sample_paths(2, ra);
  const PathParams pb = sample_paths(2, rb);
  for (int l = 0; l < pa.num_paths(); ++l) {
    CHECK(pa.gains[l] == pb.gains[l]);
    CHECK(pa.azimuth_rx[l] == pb.azimuth_rx[l]);
    CHECK(pa.elevation_rx[l] == pb.elevation_rx[l]);
    CHECK(pa.azimuth_tx[l] == pb.azimuth_tx[l]);
    CHECK(pa.elevation_tx[l] == pb.elevation_tx[l]);
  }
}

TEST_CASE("single-path BS->IRS channel is the steering outer product") {
  PathParams p;
  p.gains = {Complex(1, 0)};
  p.azimuth_rx = {0.3};
  p.elevation_rx = {1.1};
  p.azimuth_tx = {2.2};
  p.elevation_tx = {0.4};
  const ArrayGeometry bs{2, 2, 0.5};
  const ArrayGeometry irs{2, 3, 0.5};
  // rho = N*M cancels the amplitude scaling
  const ComplexMatrix h = gen_channel_bs_irs(p, bs, irs, 4.0 * 6.0);
  const ComplexVector rx = steering_vector(0.3, 1.1, irs);
  const ComplexVector tx = steering_vector(2.2, 0.4, bs);
  CHECK((h - rx * tx.adjoint()).norm() < 1e-14);
  // rank-1 norm identity: ||H||_F = sqrt(NM/rho) |alpha_0|
  const ComplexMatrix h2 = gen_channel_bs_irs(p, bs, irs, 7.5);
  CHECK(std::abs(h2.norm() - std::sqrt(4.0 * 6.0 / 7.5)) < 1e-12);
}

TEST_CASE("single-path IRS->user row is the conjugated steering vector") {
  PathParams p;
  p.gains = {Complex(1, 0)};
  p.azimuth_rx = {0.9};
  p.elevation_rx = {2.5};
  p.azimuth_tx = {0.0};
  p.elevation_tx = {0.0};
  const ArrayGeometry irs{2, 4, 0.5};
  const ComplexRowVector g = gen_channel_irs_user(p, irs, 8.0);  // rho = M
  const ComplexVector rx = steering_vector(0.9, 2.5, irs);
  CHECK((g - rx.adjoint()).norm() < 1e-14);
  const ComplexRowVector g2 = gen_channel_irs_user(p, irs, 3.0);
  CHECK(std::abs(g2.norm() - std::sqrt(8.0 / 3.0)) < 1e-12);
}

TEST_CASE("multi-path channels match the entrywise summation oracle") {
  auto rng = make_rng(83);
  for (int rep = 0; rep < 5; ++rep) {
    const PathParams p = sample_paths(3, rng);
    const ArrayGeometry bs{2, 3, 0.5};
    const ArrayGeometry irs{2, 2, 0.5};
    const double rho = 1.7e5;
    CHECK((gen_channel_bs_irs(p, bs, irs, rho) - bs_irs_oracle(p, bs, irs, rho)).norm() < 1e-12);
    CHECK((gen_channel_irs_user(p, irs, rho) - irs_user_oracle(p, irs, rho)).norm() < 1e-12);
  }
}

TEST_CASE("scenario sampling: shapes, stacking, determinism") {
  SystemConfig config;
  config.num_bs_antennas = 6;
  config.elements_per_irs = 4;
  config.num_irs = 2;
  config.num_users = 3;
  config.noise_power_watts = RealVector::Constant(3, 1e-11);
  config.weights = uniform_weights(3);
  ScenarioGeometry geometry;  // reference two-IRS layout

  auto rng = make_rng(89);
  const ChannelSet ch = sample_scenario(geometry, config, rng);
  CHECK(ch.bs_to_irs.rows() == 8);
  CHECK(ch.bs_to_irs.cols() == 6);
  CHECK(ch.irs_to_user.rows() == 3);
  CHECK(ch.irs_to_user.cols() == 8);
  CHECK(ch.noise_power_watts.size() == 3);

  auto ra = make_rng(97);
  auto rb = make_rng(97);
  const ChannelSet ca = sample_scenario(geometry, config, ra);
  const ChannelSet cb = sample_scenario(geometry, config, rb);
  CHECK((ca.bs_to_irs - cb.bs_to_irs).norm() == 0.0);
  CHECK((ca.irs_to_user - cb.irs_to_user).norm() == 0.0);

  auto rc = make_rng(101);
  const ChannelSet cc = sample_scenario(geometry, config, rc);
  CHECK((ca.bs_to_irs - cc.bs_to_irs).norm() > 0.0);
}

TEST_CASE("single-IRS stacking is the bare channel") {
  SystemConfig config;
  config.num_bs_antennas = 4;
  config.elements_per_irs = 4;
  config.num_irs = 1;
  config.num_users = 2;
  config.noise_power_watts = RealVector::Constant(2, 1e-11);
  config.weights = uniform_weights(2);
  ScenarioGeometry geometry;
  geometry.irs_positions = {{10.0, 24.0}};

  auto rng = make_rng(103);
  const ChannelSet ch = sample_scenario(geometry, config, rng);
  CHECK(ch.bs_to_irs.rows() == 4);  // exactly H_1
  CHECK(ch.irs_to_user.cols() == 4);

  // reproduce H_1 by replaying the stream: users first, then the BS->IRS draw
  auto replay = make_rng(103);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2 * config.num_users; ++i) unit(replay);
  const PathParams p = sample_paths(geometry.num_nlos_paths, replay);
  const double rho = path_loss(26.0, geometry.carrier_hz);
  const ComplexMatrix h1 =
      gen_channel_bs_irs(p, bs_array_geometry(4), irs_array_geometry(4), rho);
  CHECK((ch.bs_to_irs - h1).norm() < 1e-12);
}

TEST_CASE("geometry validation errors") {
  CHECK_THROWS_AS(bs_array_geometry(7), ConfigError);
  CHECK_THROWS_AS(irs_array_geometry(0), ConfigError);
  ScenarioGeometry geometry;
  geometry.user_radius = -1.0;
  CHECK_THROWS_AS(geometry.validate(), ConfigError);

  SystemConfig config;
  config.num_bs_antennas = 4;
  config.elements_per_irs = 4;
  config.num_irs = 3;  // only two IRS positions in the default geometry
  config.num_users = 1;
  config.noise_power_watts = RealVector::Constant(1, 1e-11);
  config.weights = uniform_weights(1);
  ScenarioGeometry two_irs;
  auto rng = make_rng(109);
  CHECK_THROWS_AS(sample_scenario(two_irs, config, rng), ConfigError);
}
