// SPDX-License-Identifier: Apache-2.0
#include "irsopt/manifolds.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace irsopt {

namespace {

Complex frobenius_dot(const ComplexMatrix& a, const ComplexMatrix& b) {
  // tr(a^H b) without forming the product
  return a.conjugate().cwiseProduct(b).sum();
}

}  // namespace

SphereManifold::SphereManifold(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    throw DimensionError("SphereManifold: rows and cols must be positive");
}

void SphereManifold::check_shape(const Point& p, const char* what) const {
  if (p.rows() != rows_ || p.cols() != cols_)
    throw DimensionError(std::string("SphereManifold: ") + what + " has shape " +
                         std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                         ", expected " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

SphereManifold::Point SphereManifold::project(const Point& base, const Point& ambient) const {
  check_shape(base, "base point");
  check_shape(ambient, "ambient direction");
  return ambient - frobenius_dot(base, ambient).real() * base;
}

SphereManifold::Point SphereManifold::retract(const Point& base, const Point& tangent,
                                              double step) const {
  check_shape(base, "base point");
  check_shape(tangent, "tangent");
  if (step < 0.0) throw DomainError("SphereManifold::retract: step must be nonnegative");
  Point moved = base + step * tangent;
  const double norm = moved.norm();
  if (norm < kDegenerateRetractionTol)
    throw DegenerateRetractionError("SphereManifold::retract: moved point has vanishing norm");
  moved /= norm;
  return moved;
}

SphereManifold::Point SphereManifold::transport(const Point& base, const Point& step_times_dir,
                                                const Point& tangent) const {
  return project(retract(base, step_times_dir, 1.0), tangent);
}

double SphereManifold::inner(const Point& a, const Point& b) const {
  check_shape(a, "first argument");
  check_shape(b, "second argument");
  return frobenius_dot(a, b).real();
}

SphereManifold::Point SphereManifold::random_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  Point x(rows_, cols_);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x.data()[i] = Complex(re, im);
  }
  x /= x.norm();
  return x;
}

double SphereManifold::feasibility_error(const Point& x) const {
  check_shape(x, "point");
  return std::abs(x.squaredNorm() - 1.0);
}

double SphereManifold::tangency_error(const Point& base, const Point& tangent) const {
  check_shape(base, "base point");
  check_shape(tangent, "tangent");
  return std::abs(frobenius_dot(base, tangent).real());
}

ObliqueManifold::ObliqueManifold(int dim) : dim_(dim) {
  if (dim <= 0) throw DimensionError("ObliqueManifold: dim must be positive");
}

void ObliqueManifold::check_shape(const Point& p, const char* what) const {
  if (p.size() != dim_)
    throw DimensionError(std::string("ObliqueManifold: ") + what + " has length " +
                         std::to_string(p.size()) + ", expected " + std::to_string(dim_));
}

ObliqueManifold::Point ObliqueManifold::project(const Point& base, const Point& ambient) const {
  check_shape(base, "base point");
  check_shape(ambient, "ambient direction");
  Point out(dim_);
  for (int i = 0; i < dim_; ++i) {
    const Complex u = base[i];
    const Complex psi = ambient[i];
    out[i] = psi - (psi * std::conj(u)).real() * u;
  }
  return out;
}

ObliqueManifold::Point ObliqueManifold::retract(const Point& base, const Point& tangent,
                                                double step) const {
  check_shape(base, "base point");
  check_shape(tangent, "tangent");
  if (step < 0.0) throw DomainError("ObliqueManifold::retract: step must be nonnegative");
  Point out(dim_);
  for (int i = 0; i < dim_; ++i) {
    const Complex moved = base[i] + step * tangent[i];
    const double mag = std::abs(moved);
    if (mag < kDegenerateRetractionTol)
      throw DegenerateRetractionError("ObliqueManifold::retract: entry " + std::to_string(i) +
                                      " has vanishing modulus");
    out[i] = moved / mag;
  }
  return out;
}

ObliqueManifold::Point ObliqueManifold::transport(const Point& base, const Point& step_times_dir,
                                                  const Point& tangent) const {
  return project(retract(base, step_times_dir, 1.0), tangent);
}

double ObliqueManifold::inner(const Point& a, const Point& b) const {
  check_shape(a, "first argument");
  check_shape(b, "second argument");
  return a.conjugate().cwiseProduct(b).sum().real();
}

ObliqueManifold::Point ObliqueManifold::random_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Point u(dim_);
  for (int i = 0; i < dim_; ++i) u[i] = std::polar(1.0, phase(rng));
  return u;
}

double ObliqueManifold::feasibility_error(const Point& u) const {
  check_shape(u, "point");
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) worst = std::max(worst, std::abs(std::abs(u[i]) - 1.0));
  return worst;
}

double ObliqueManifold::tangency_error(const Point& base, const Point& tangent) const {
  check_shape(base, "base point");
  check_shape(tangent, "tangent");
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    worst = std::max(worst, std::abs((tangent[i] * std::conj(base[i])).real()));
  return worst;
}

}  // namespace irsopt
