// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/measures.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "mmlab/rng.hpp"

namespace mmlab {

namespace {

void check_count(std::size_t m) {
  if (m == 0) throw std::invalid_argument("sample count must be positive");
}

// Gaussian direction normalized to the unit sphere; redraws the (probability
// zero) all-zero vector.
void draw_direction(Engine& engine, std::normal_distribution<double>& normal,
                    std::span<double> out) {
  double s = 0.0;
  do {
    s = 0.0;
    for (double& v : out) {
      v = normal(engine);
      s += v * v;
    }
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (double& v : out) v *= inv;
}

PointCloud sample_ball_impl(std::size_t n, std::size_t m, std::uint64_t seed) {
  check_count(m);
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  std::vector<double> coords(n * m);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::span<double> p(coords.data() + i * n, n);
    draw_direction(engine, normal, p);
    const double radius = std::pow(unif(engine), inv_n);
    for (double& v : p) v *= radius;
  }
  return PointCloud(n, std::move(coords), {seed, "ball"});
}

}  // namespace

EllipsoidSpec::EllipsoidSpec(EllipsoidKind kind, std::vector<double> semiaxes)
    : kind_(kind), semiaxes_(std::move(semiaxes)) {
  if (semiaxes_.size() < 2) throw std::invalid_argument("EllipsoidSpec: need n >= 2");
  for (double a : semiaxes_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("EllipsoidSpec: semiaxes must be positive and finite");
    }
  }
}

std::vector<double> EllipsoidSpec::normalized_axes() const {
  const double s = std::sqrt(static_cast<double>(dim() - 1));
  std::vector<double> out(semiaxes_);
  for (double& a : out) a /= s;
  return out;
}

EllipsoidSpec EllipsoidSpec::from_normalized(EllipsoidKind kind, std::span<const double> a) {
  if (a.size() < 2) throw std::invalid_argument("EllipsoidSpec: need n >= 2");
  const double s = std::sqrt(static_cast<double>(a.size() - 1));
  std::vector<double> axes(a.begin(), a.end());
  for (double& v : axes) v *= s;
  return EllipsoidSpec(kind, std::move(axes));
}

GaussianSpec::GaussianSpec(std::vector<double> stddevs) : stddevs_(std::move(stddevs)) {
  if (stddevs_.empty()) throw std::invalid_argument("GaussianSpec: empty");
  for (double a : stddevs_) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("GaussianSpec: stddevs must be nonnegative and finite");
    }
  }
}

double GaussianSpec::second_moment() const noexcept {
  double s = 0.0;
  for (double a : stddevs_) s += a * a;
  return s;
}

PointCloud sample_sphere(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_sphere: need n >= 2");
  check_count(m);
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> coords(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    draw_direction(engine, normal, std::span<double>(coords.data() + i * n, n));
  }
  return PointCloud(n, std::move(coords), {seed, "sphere"});
}

PointCloud sample_ball(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_ball: need n >= 1");
  return sample_ball_impl(n, m, seed);
}

PointCloud sample_gaussian(const GaussianSpec& spec, std::size_t m, std::uint64_t seed) {
  check_count(m);
  const std::size_t n = spec.dim();
  const auto& a = spec.stddevs();
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> coords(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Always draw so that the stream stays aligned with a standard normal
      // vector of the same dimension.
      const double z = normal(engine);
      coords[i * n + j] = a[j] == 0.0 ? 0.0 : a[j] * z;
    }
  }
  return PointCloud(n, std::move(coords), {seed, "gaussian"});
}

PointCloud linear_scale(const PointCloud& cloud, std::span<const double> semiaxes) {
  const std::size_t n = cloud.dim();
  if (semiaxes.size() != n) throw std::invalid_argument("linear_scale: length mismatch");
  std::vector<double> coords(cloud.coords());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] *= semiaxes[i % n];
  return PointCloud(n, std::move(coords), cloud.provenance());
}

PointCloud sample_ellipsoid(const EllipsoidSpec& spec, std::size_t m, std::uint64_t seed) {
  const std::size_t n = spec.dim();
  PointCloud base = spec.kind() == EllipsoidKind::Surface ? sample_sphere(n, m, seed)
                                                          : sample_ball(n, m, seed);
  return linear_scale(base, spec.semiaxes());
}

PointCloud project(const PointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.dim();
  if (k < 1 || k > n) throw std::invalid_argument("project: k out of range");
  if (k == n) return cloud;
  std::vector<double> coords(cloud.size() * k);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    std::copy(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k), coords.begin() + i * k);
  }
  return PointCloud(k, std::move(coords), cloud.provenance());
}

namespace {

void validate_d(const RegionD& d, std::size_t dim) {
  if (d.N < 1 || d.N > dim) throw std::invalid_argument("region D: need 1 <= N <= dim");
  if (!(d.eps > 0.0)) throw std::invalid_argument("region D: eps must be positive");
}

void validate_f(const RegionF& f, std::size_t dim) {
  if (!(f.theta > 0.0 && f.theta < 1.0)) {
    throw std::invalid_argument("region F: theta must lie in (0,1)");
  }
  if (f.semiaxes.size() != dim) throw std::invalid_argument("region F: semiaxes length");
  for (double a : f.semiaxes) {
    if (!(a > 0.0)) throw std::invalid_argument("region F: semiaxes must be positive");
  }
}

bool in_d(std::span<const double> x, const RegionD& d) {
  const double r = norm(x);
  if (r == 0.0) return false;
  for (std::size_t j = 0; j + 1 < d.N; ++j) {
    if (!(std::abs(x[j]) / r < d.eps)) return false;
  }
  return true;
}

bool in_f(std::span<const double> x, const RegionF& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double u = x[j] / f.semiaxes[j];
    s += u * u;
  }
  return std::sqrt(s) >= f.theta * std::sqrt(static_cast<double>(x.size()));
}

}  // namespace

void validate_region(const RegionSpec& region, std::size_t dim) {
  std::visit(
      [dim](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RegionD>) {
          validate_d(r, dim);
        } else if constexpr (std::is_same_v<T, RegionF>) {
          validate_f(r, dim);
        } else {
          validate_d(r.d, dim);
          validate_f(r.f, dim);
        }
      },
      region);
}

bool in_region(std::span<const double> x, const RegionSpec& region) {
  return std::visit(
      [x](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RegionD>) {
          return in_d(x, r);
        } else if constexpr (std::is_same_v<T, RegionF>) {
          return in_f(x, r);
        } else {
          return in_d(x, r.d) && in_f(x, r.f);
        }
      },
      region);
}

RegionMask region_mask(const PointCloud& cloud, const RegionSpec& region) {
  validate_region(region, cloud.dim());
  RegionMask out;
  out.mask.resize(cloud.size());
  std::size_t kept = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const bool in = in_region(cloud.point(i), region);
    out.mask[i] = in;
    kept += in ? 1 : 0;
  }
  out.fraction = static_cast<double>(kept) / static_cast<double>(cloud.size());
  return out;
}

}  // namespace mmlab
