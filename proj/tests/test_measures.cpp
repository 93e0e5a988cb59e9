// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmlab/measures.hpp"
#include "mmlab/point_cloud.hpp"
#include "mmlab/rng.hpp"

using namespace mmlab;

namespace {

// sup |F_m - F| against a continuous CDF
template <class Cdf>
double ks_one_sample(std::vector<double> v, Cdf cdf) {
  std::sort(v.begin(), v.end());
  const double m = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / m),
                  std::abs(static_cast<double>(i + 1) / m - f)});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("sphere samples have unit norm") {
  const auto c = sample_sphere(2, 4, 11);
  CHECK(c.size() == 4);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(norm(c.point(i)) == doctest::Approx(1.0).epsilon(1e-12));
  const auto big = sample_sphere(300, 200, 12);
  for (std::size_t i = 0; i < big.size(); ++i) CHECK(std::abs(norm(big.point(i)) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(sample_sphere(1, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_sphere(3, 0, 1), std::invalid_argument);
}

TEST_CASE("first coordinate on the 2-sphere is uniform on [-1,1]") {
  const auto c = sample_sphere(3, 100000, 21);
  CHECK(ks_one_sample(c.column(0), [](double t) { return (t + 1.0) / 2.0; }) <= 0.01);
}

TEST_CASE("ball samples") {
  const auto line = sample_ball(1, 100000, 31);
  const auto v = line.column(0);
  double mean = 0.0, sq = 0.0;
  for (double x : v) {
    mean += x;
    sq += x * x;
  }
  mean /= static_cast<double>(v.size());
  sq /= static_cast<double>(v.size());
  CHECK(std::abs(mean) <= 0.01);
  CHECK(std::abs(sq - 1.0 / 3.0) <= 0.01);

  const auto disk = sample_ball(2, 100000, 32);
  std::size_t inner = 0;
  double max_norm = 0.0;
  for (std::size_t i = 0; i < disk.size(); ++i) {
    const double r = norm(disk.point(i));
    inner += r <= 0.5;
    max_norm = std::max(max_norm, r);
  }
  CHECK(std::abs(static_cast<double>(inner) / 100000.0 - 0.25) <= 0.01);
  CHECK(max_norm <= 1.0);
  CHECK_THROWS_AS(sample_ball(0, 4, 1), std::invalid_argument);
}

TEST_CASE("gaussian samples") {
  const auto c = sample_gaussian(GaussianSpec({1.0}), 100000, 41);
  double var = 0.0;
  for (double x : c.column(0)) var += x * x;
  CHECK(std::abs(var / 100000.0 - 1.0) <= 0.02);

  const auto degenerate = sample_gaussian(GaussianSpec({2.0, 0.0}), 100, 42);
  for (double x : degenerate.column(1)) CHECK(x == 0.0);

  const auto wide = sample_gaussian(GaussianSpec(std::vector<double>(1000, 1.0)), 10000, 43);
  double ms = 0.0;
  for (std::size_t i = 0; i < wide.size(); ++i) ms += std::pow(norm(wide.point(i)), 2) / 1000.0;
  CHECK(std::abs(ms / 10000.0 - 1.0) <= 0.01);

  CHECK(GaussianSpec({1.0, 2.0, 0.0}).second_moment() == 5.0);
  CHECK_THROWS_AS(GaussianSpec({-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianSpec({NAN}), std::invalid_argument);
}

TEST_CASE("linear scale") {
  const PointCloud c(2, {1.0, 2.0});
  const std::vector<double> a{3.0, 0.5};
  const auto s = linear_scale(c, a);
  CHECK(s.point(0)[0] == 3.0);
  CHECK(s.point(0)[1] == 1.0);
  CHECK(linear_scale(c, std::vector<double>{1.0, 1.0}).identical(c));
  CHECK_THROWS_AS(linear_scale(c, std::vector<double>{1.0}), std::invalid_argument);

  const auto g = sample_gaussian(GaussianSpec({1.0, 1.0, 1.0}), 50, 44);
  const std::vector<double> alpha{0.3, 2.0, 7.0};
  const std::vector<double> inv{1.0 / 0.3, 0.5, 1.0 / 7.0};
  const auto back = linear_scale(linear_scale(g, alpha), inv);
  for (std::size_t i = 0; i < g.coords().size(); ++i) {
    CHECK(back.coords()[i] == doctest::Approx(g.coords()[i]).epsilon(1e-14));
  }
}

TEST_CASE("ellipsoid specs and samples") {
  CHECK_THROWS_AS(EllipsoidSpec(EllipsoidKind::Solid, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(EllipsoidSpec(EllipsoidKind::Solid, {1.0, 0.0}), std::invalid_argument);
  const EllipsoidSpec e(EllipsoidKind::Surface, {3.0, 6.0});
  CHECK(e.normalized_axes() == std::vector<double>{3.0, 6.0});
  const EllipsoidSpec f(EllipsoidKind::Surface, {2.0, 4.0, 6.0});
  CHECK(f.normalized_axes()[2] == doctest::Approx(6.0 / std::sqrt(2.0)));

  const auto circle = sample_ellipsoid(EllipsoidSpec(EllipsoidKind::Surface, {1.0, 1.0}), 20, 51);
  for (std::size_t i = 0; i < circle.size(); ++i) CHECK(norm(circle.point(i)) == doctest::Approx(1.0));

  const auto stretched = sample_ellipsoid(EllipsoidSpec(EllipsoidKind::Surface, {2.0, 1.0}), 100000, 52);
  auto half = stretched.column(0);
  for (double& v : half) v /= 2.0;
  CHECK(ks_two_sample(half, sample_sphere(2, 100000, 53).column(0)) <= 0.01);

  const auto solid = sample_ellipsoid(EllipsoidSpec(EllipsoidKind::Solid, {3.0, 1.0}), 100000, 54);
  for (std::size_t i = 0; i < solid.size(); ++i) {
    const auto p = solid.point(i);
    REQUIRE(p[0] * p[0] / 9.0 + p[1] * p[1] <= 1.0 + 1e-12);
  }
}

TEST_CASE("surface samples are the linear image of sphere samples") {
  const std::vector<double> alpha{5.0, 2.0, 1.0, 0.5};
  const auto direct = sample_ellipsoid(EllipsoidSpec(EllipsoidKind::Surface, alpha), 300, 61);
  const auto pushed = linear_scale(sample_sphere(4, 300, 61), alpha);
  CHECK(direct.identical(pushed));
  const auto solid = sample_ellipsoid(EllipsoidSpec(EllipsoidKind::Solid, alpha), 300, 62);
  CHECK(solid.identical(linear_scale(sample_ball(4, 300, 62), alpha)));
}

TEST_CASE("sampling is deterministic in the seed") {
  CHECK(sample_sphere(7, 100, 71).identical(sample_sphere(7, 100, 71)));
  CHECK(!sample_sphere(7, 100, 71).identical(sample_sphere(7, 100, 72)));
  CHECK(sample_gaussian(GaussianSpec({1.0, 3.0}), 100, 73)
            .identical(sample_gaussian(GaussianSpec({1.0, 3.0}), 100, 73)));
  CHECK(derive_seed(5, "a", {1, 2}) == derive_seed(5, "a", {1, 2}));
  CHECK(derive_seed(5, "a", {1, 2}) != derive_seed(5, "a", {2, 1}));
  CHECK(derive_seed(5, "a") != derive_seed(5, "b"));
}

TEST_CASE("scaling by alpha/beta <= 1 maps the beta ellipsoid into the alpha one and contracts") {
  const std::vector<double> beta{4.0, 3.0, 2.0, 2.0, 1.0};
  const std::vector<double> alpha{1.0, 3.0, 0.5, 1.5, 1.0};
  std::vector<double> ratio(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) ratio[i] = alpha[i] / beta[i];
  const auto x = sample_ellipsoid(EllipsoidSpec(EllipsoidKind::Solid, beta), 400, 81);
  const auto fx = linear_scale(x, ratio);
  for (std::size_t i = 0; i < fx.size(); ++i) {
    double q = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) q += std::pow(fx.point(i)[k] / alpha[k], 2);
    CHECK(q <= 1.0 + 1e-12);
    for (std::size_t j = i + 1; j < fx.size(); ++j) {
      REQUIRE(distance(fx.point(i), fx.point(j)) <= distance(x.point(i), x.point(j)));
    }
  }
}

TEST_CASE("projection") {
  const PointCloud c(3, {1.0, 2.0, 3.0});
  const auto p = project(c, 2);
  CHECK(p.dim() == 2);
  CHECK(p.coords() == std::vector<double>{1.0, 2.0});
  CHECK(project(c, 3).identical(c));
  CHECK_THROWS_AS(project(c, 0), std::invalid_argument);
  CHECK_THROWS_AS(project(c, 4), std::invalid_argument);
  const auto g = sample_gaussian(GaussianSpec(std::vector<double>(6, 1.0)), 200, 91);
  const auto pg = project(g, 2);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      REQUIRE(distance(pg.point(i), pg.point(j)) <= distance(g.point(i), g.point(j)));
}

TEST_CASE("regions") {
  const PointCloud c(2, {0.5, 1.0, 0.0, 0.0, 3.0, 0.1});
  const auto all = region_mask(c, RegionD{1, 0.01});
  CHECK(all.mask == std::vector<bool>{true, false, true});
  const auto d = region_mask(c, RegionD{2, 0.5});
  CHECK(d.mask == std::vector<bool>{true, false, false});
  CHECK(d.fraction == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(region_mask(c, RegionD{3, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(region_mask(c, RegionD{1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(region_mask(c, RegionF{1.0, {1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(region_mask(c, RegionF{0.5, {1.0}}), std::invalid_argument);

  const std::vector<double> axes(20, 1.0);
  const auto g = sample_gaussian(GaussianSpec(axes), 2000, 101);
  double prev = 2.0;
  for (double eps : {0.9, 0.5, 0.3, 0.1, 0.05}) {
    const auto m = region_mask(g, RegionD{4, eps});
    CHECK(m.fraction <= prev);
    prev = m.fraction;
  }
  prev = 2.0;
  for (double theta : {0.1, 0.5, 0.8, 0.9, 0.99}) {
    const auto m = region_mask(g, RegionF{theta, axes});
    CHECK(m.fraction <= prev);
    prev = m.fraction;
  }
  const auto inter = region_mask(g, RegionDF{{4, 0.3}, {0.9, axes}});
  const auto dm = region_mask(g, RegionD{4, 0.3});
  const auto fm = region_mask(g, RegionF{0.9, axes});
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(inter.mask[i] == (dm.mask[i] && fm.mask[i]));
}

TEST_CASE("D and F carry almost all Gaussian mass in high dimension") {
  std::vector<double> axes(2000, 1.0);
  axes[0] = 1.5;
  axes[1] = 1.2;
  const auto g = sample_gaussian(GaussianSpec(axes), 5000, 111);
  CHECK(region_mask(g, RegionDF{{3, 0.1}, {0.9, axes}}).fraction >= 0.99);
}

TEST_CASE("point cloud invariants and serialization") {
  CHECK_THROWS_AS(PointCloud(0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(1, {INFINITY}), std::invalid_argument);

  const auto c = sample_gaussian(GaussianSpec({1.0, 1e-300, 1e300}), 25, 121);
  std::stringstream bin;
  write_binary(c, bin);
  CHECK(read_binary(bin).identical(c));
  std::stringstream csv;
  write_csv(c, csv);
  CHECK(read_csv(csv).identical(c));

  std::stringstream truncated(bin.str().substr(0, 20));
  CHECK_THROWS(read_binary(truncated));
  std::stringstream ragged("1,2\n3\n");
  CHECK_THROWS(read_csv(ragged));
}
