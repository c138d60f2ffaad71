// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "irsopt/types.hpp"

namespace irsopt {

/// Below this, a retraction denominator counts as vanished.
inline constexpr double kDegenerateRetractionTol = 1e-14;

/// Complex matrices of a fixed shape with unit Frobenius norm.
///
/// All operations are pure functions of their inputs and safe for concurrent
/// use. Tangent vectors are represented in the ambient space; at a point X
/// they satisfy Re tr(X^H eta) = 0.
class SphereManifold {
 public:
  using Point = ComplexMatrix;

  SphereManifold(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Projects an ambient direction onto the tangent space at `base`:
  /// Psi - Re(tr(base^H Psi)) * base. The real part matters: the all-complex
  /// coefficient also removes the global-phase direction j*base, freezing any
  /// cost that is not phase invariant at a spurious stationary point.
  /// Idempotent for unit-norm base points.
  Point project(const Point& base, const Point& ambient) const;

  /// (base + step*tangent) rescaled to unit Frobenius norm.
  Point retract(const Point& base, const Point& tangent, double step) const;

  /// Carries `tangent` to the tangent space at retract(base, step_times_dir, 1)
  /// by projecting it there.
  Point transport(const Point& base, const Point& step_times_dir, const Point& tangent) const;

  /// Real part of the Frobenius inner product.
  double inner(const Point& a, const Point& b) const;

  /// Complex Gaussian matrix normalized to the sphere.
  Point random_point(std::mt19937_64& rng) const;

  /// |tr(X^H X) - 1|
  double feasibility_error(const Point& x) const;

  /// |Re tr(base^H tangent)|
  double tangency_error(const Point& base, const Point& tangent) const;

 private:
  void check_shape(const Point& p, const char* what) const;

  int rows_;
  int cols_;
};

/// Complex vectors with unit-modulus entries (a product of circles).
///
/// The tangent-space projection takes the real part of the per-entry
/// coefficient, psi_i - Re(psi_i * conj(u_i)) * u_i: under the real inner
/// product Re<.,.> the normal space at u_i is the real span of u_i, and the
/// all-complex coefficient would annihilate every ambient vector.
class ObliqueManifold {
 public:
  using Point = ComplexVector;

  explicit ObliqueManifold(int dim);

  int dim() const { return dim_; }

  Point project(const Point& base, const Point& ambient) const;

  /// Entrywise rescaling of base + step*tangent to unit modulus.
  Point retract(const Point& base, const Point& tangent, double step) const;

  Point transport(const Point& base, const Point& step_times_dir, const Point& tangent) const;

  double inner(const Point& a, const Point& b) const;

  /// Entries e^{j theta} with phases i.i.d. uniform on [0, 2pi).
  Point random_point(std::mt19937_64& rng) const;

  /// max_i | |u_i| - 1 |
  double feasibility_error(const Point& u) const;

  /// max_i |Re(tangent_i * conj(base_i))|
  double tangency_error(const Point& base, const Point& tangent) const;

 private:
  void check_shape(const Point& p, const char* what) const;

  int dim_;
};

}  // namespace irsopt
