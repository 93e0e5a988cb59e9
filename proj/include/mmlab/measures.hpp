// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_MEASURES_HPP
#define MMLAB_MEASURES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mmlab/point_cloud.hpp"

namespace mmlab {

enum class EllipsoidKind { Solid, Surface };

/// Solid ellipsoid sum x_i^2/alpha_i^2 <= 1 with normalized Lebesgue measure, or
/// its boundary carrying the linear pushforward of the round sphere measure.
class EllipsoidSpec {
 public:
  EllipsoidSpec(EllipsoidKind kind, std::vector<double> semiaxes);

  [[nodiscard]] EllipsoidKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<double>& semiaxes() const noexcept { return semiaxes_; }
  [[nodiscard]] std::size_t dim() const noexcept { return semiaxes_.size(); }
  /// alpha_i / sqrt(n - 1)
  [[nodiscard]] std::vector<double> normalized_axes() const;

  /// Ellipsoid with semiaxes sqrt(n - 1) * a_i.
  static EllipsoidSpec from_normalized(EllipsoidKind kind, std::span<const double> a);

 private:
  EllipsoidKind kind_;
  std::vector<double> semiaxes_;
};

/// Centered axis-aligned Gaussian with standard deviations a_i; a_i = 0 is a
/// Dirac mass on that axis.
class GaussianSpec {
 public:
  explicit GaussianSpec(std::vector<double> stddevs);

  [[nodiscard]] const std::vector<double>& stddevs() const noexcept { return stddevs_; }
  [[nodiscard]] std::size_t dim() const noexcept { return stddevs_.size(); }
  [[nodiscard]] double second_moment() const noexcept;

 private:
  std::vector<double> stddevs_;
};

PointCloud sample_sphere(std::size_t n, std::size_t m, std::uint64_t seed);
PointCloud sample_ball(std::size_t n, std::size_t m, std::uint64_t seed);
PointCloud sample_gaussian(const GaussianSpec& spec, std::size_t m, std::uint64_t seed);
PointCloud sample_ellipsoid(const EllipsoidSpec& spec, std::size_t m, std::uint64_t seed);

/// x -> (alpha_1 x_1, ..., alpha_n x_n)
PointCloud linear_scale(const PointCloud& cloud, std::span<const double> semiaxes);

/// First k coordinates.
PointCloud project(const PointCloud& cloud, std::size_t k);

/// |x_j| / |x| < eps for j = 1..N-1; the origin is excluded.
struct RegionD {
  std::size_t N = 1;
  double eps = 1.0;
};

/// |L^{-1} x| >= theta sqrt(n), L = diag(semiaxes).
struct RegionF {
  double theta = 0.5;
  std::vector<double> semiaxes;
};

struct RegionDF {
  RegionD d;
  RegionF f;
};

using RegionSpec = std::variant<RegionD, RegionF, RegionDF>;

struct RegionMask {
  std::vector<bool> mask;
  double fraction = 0.0;
};

/// Throws std::invalid_argument when the region parameters do not fit dim.
void validate_region(const RegionSpec& region, std::size_t dim);
bool in_region(std::span<const double> x, const RegionSpec& region);
RegionMask region_mask(const PointCloud& cloud, const RegionSpec& region);

}  // namespace mmlab

#endif  // MMLAB_MEASURES_HPP
