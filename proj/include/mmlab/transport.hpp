// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_TRANSPORT_HPP
#define MMLAB_TRANSPORT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mmlab/point_cloud.hpp"

namespace mmlab {

/// Radius matching between the standard Gaussian on R^n and the uniform measure
/// on the ball of radius sqrt(n - 1):
///
///   R(r) = sqrt(n - 1) * P(n/2, r^2/2)^(1/n),
///
/// where P is the regularized lower incomplete gamma function. Equivalently
/// gamma^n(B_r) = eps^n_{sqrt(n-1)}(B_{R(r)}).
class RadialProfile {
 public:
  explicit RadialProfile(std::size_t n);

  [[nodiscard]] std::size_t dim() const noexcept { return n_; }
  /// sqrt(n - 1), the supremum of R.
  [[nodiscard]] double saturation() const noexcept { return saturation_; }
  [[nodiscard]] double operator()(double r) const;

 private:
  std::size_t n_;
  double saturation_;
};

double radial_R(const RadialProfile& profile, double r);

/// Radius matching between the Gaussian restricted to the annulus
/// theta sqrt(n-1) <= r <= sqrt(n-1)/theta and the uniform measure restricted to
/// theta sqrt(n-1) <= R <= sqrt(n-1), both normalized.
double annulus_profile(double theta, std::size_t n, double r);

enum class TransportKind {
  PhiE,        ///< L o (R(|y|)/|y|) y o L^{-1}: Gaussian -> solid ellipsoid
  PhiS,        ///< sqrt(n-1)/|L^{-1}x| x: Gaussian -> ellipsoid surface
  PsiAnnulus,  ///< annulus_profile(theta, n, r)/r x on the Gaussian annulus
  Linear,      ///< L itself; used to check the operator-norm probe
};

struct TransportMapSpec {
  TransportKind kind = TransportKind::PhiE;
  /// a_i defining L = diag(a_i); targets have semiaxes sqrt(n-1) a_i.
  std::vector<double> semiaxes;
  double theta = 0.9;  ///< PsiAnnulus only
};

/// Pointwise evaluator bound to a dimension.
class TransportMap {
 public:
  explicit TransportMap(TransportMapSpec spec);

  [[nodiscard]] const TransportMapSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] std::size_t dim() const noexcept { return spec_.semiaxes.size(); }

  /// |L^{-1} x|
  [[nodiscard]] double gauge(std::span<const double> x) const noexcept;
  void apply(std::span<const double> x, std::span<double> out) const;

 private:
  TransportMapSpec spec_;
  RadialProfile profile_;
};

PointCloud apply_transport(const TransportMapSpec& spec, const PointCloud& cloud);

struct OpNormEstimate {
  double value = 0.0;
  bool degenerate = false;  ///< Jacobian vanished or was not finite
  int iterations = 0;
};

struct OpNormOptions {
  double step = 0.0;  ///< 0 selects 1e-5 * max(1, |x|)
  int max_iterations = 30;
  double tolerance = 1e-10;
};

/// Central-difference Jacobian of the map at x followed by power iteration on
/// J^T J. Returns the largest singular value of J.
OpNormEstimate opnorm_at(const TransportMapSpec& spec, std::span<const double> x,
                         const OpNormOptions& options = {});

}  // namespace mmlab

#endif  // MMLAB_TRANSPORT_HPP
