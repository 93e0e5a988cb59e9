// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_POINT_CLOUD_HPP
#define MMLAB_POINT_CLOUD_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mmlab {

struct SeedProvenance {
  std::uint64_t seed = 0;
  std::string stream;
};

/// m equally weighted points in R^dim, stored row-major. Immutable once built.
class PointCloud {
 public:
  PointCloud(std::size_t dim, std::vector<double> coords, SeedProvenance provenance = {});

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return coords_.size() / dim_; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }
  [[nodiscard]] const SeedProvenance& provenance() const noexcept { return provenance_; }

  /// Coordinate j of every point.
  [[nodiscard]] std::vector<double> column(std::size_t j) const;

  /// Bitwise equality of the coordinate arrays (provenance ignored).
  [[nodiscard]] bool identical(const PointCloud& other) const noexcept;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  SeedProvenance provenance_;
};

double distance(std::span<const double> x, std::span<const double> y) noexcept;
double norm(std::span<const double> x) noexcept;

// Binary layout, little-endian: u32 dim, u64 m, then m*dim f64 row-major.
void write_binary(const PointCloud& cloud, std::ostream& out);
PointCloud read_binary(std::istream& in);

// Headerless CSV, one point per row, shortest round-trip decimal form.
void write_csv(const PointCloud& cloud, std::ostream& out);
PointCloud read_csv(std::istream& in);

void save_binary(const PointCloud& cloud, const std::string& path);
PointCloud load_binary(const std::string& path);

}  // namespace mmlab

#endif  // MMLAB_POINT_CLOUD_HPP
