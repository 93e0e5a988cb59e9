// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mmlab/measures.hpp"
#include "mmlab/observables.hpp"
#include "oracles/oracles.hpp"

using namespace mmlab;

namespace {

// Shortest window over every start index, written out directly.
double window_oracle(std::vector<double> v, double kappa) {
  std::sort(v.begin(), v.end());
  const auto m = static_cast<double>(v.size());
  std::size_t k = 1;
  while (static_cast<double>(k) < (1.0 - kappa) * m - 1e-9) ++k;
  double best = INFINITY;
  for (std::size_t i = 0; i + k <= v.size(); ++i) best = std::min(best, v[i + k - 1] - v[i]);
  return best;
}

}  // namespace

TEST_CASE("partial diameter on small samples") {
  CHECK(partial_diameter_1d({0.0, 1.0, 2.0, 3.0}, 0.5) == 1.0);
  CHECK(partial_diameter_1d({0.0, 1.0, 2.0, 3.0}, 0.2) == 3.0);
  CHECK(partial_diameter_1d({0.0, 1.0, 2.0, 3.0}, 0.25) == 2.0);
  CHECK(partial_diameter_1d({4.0, 4.0, 4.0}, 0.2) == 0.0);
  CHECK(partial_diameter_1d({7.0}, 0.5) == 0.0);
  CHECK_THROWS_AS(partial_diameter_1d({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(partial_diameter_1d({1.0, 2.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(partial_diameter_1d({1.0, 2.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(partial_diameter_1d({1.0, 2.0}, -0.1), std::invalid_argument);
}

TEST_CASE("partial diameter matches the window scan and is monotone in kappa") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(3 + rep * 7);
    for (double& x : v) x = g(rng);
    double prev = INFINITY;
    for (double kappa : {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.95}) {
      const double pd = partial_diameter_1d(v, kappa);
      CHECK(pd == doctest::Approx(window_oracle(v, kappa)).epsilon(1e-14));
      CHECK(pd <= prev);
      prev = pd;
    }
  }
}

TEST_CASE("standard normal half-mass diameter") {
  const auto cloud = sample_gaussian(GaussianSpec({1.0}), 100000, 5);
  const double expected = 2.0 * oracle::normal_quantile(0.75);
  CHECK(partial_diameter_1d(cloud.column(0), 0.5) == doctest::Approx(expected).epsilon(0.015));
}

TEST_CASE("single point cloud has zero observable diameter") {
  PointCloud one(3, {1.0, -2.0, 0.5});
  const auto est = obs_diameter_lower(one, 0.3, 4, 1);
  CHECK(est.lower_bound == 0.0);
}

TEST_CASE("one-dimensional Gaussian scales with its deviation") {
  const double kappa = 0.2;
  const auto unit = sample_gaussian(GaussianSpec({1.0}), 20000, 8);
  const auto wide = sample_gaussian(GaussianSpec({2.5}), 20000, 8);
  const double base = partial_diameter_1d(unit.column(0), kappa);
  CHECK(base == doctest::Approx(2.0 * oracle::normal_quantile(0.9)).epsilon(0.03));
  const auto est = obs_diameter_lower(wide, kappa, 4, 3);
  CHECK(est.lower_bound == doctest::Approx(2.5 * base).epsilon(0.02));
}

TEST_CASE("round sphere observable diameter is near the Gaussian value") {
  const std::size_t n = 1000;
  const std::vector<double> ones(n, 1.0);
  const auto cloud =
      sample_ellipsoid(EllipsoidSpec::from_normalized(EllipsoidKind::Surface, ones), 10000, 21);
  const auto est = obs_diameter_lower(cloud, 0.1, 8, 4);
  const double gaussian = 2.0 * oracle::normal_quantile(0.95);
  CHECK(std::abs(est.lower_bound - gaussian) <= 0.1 * gaussian);
}

TEST_CASE("estimate is the best witness and below the diameter") {
  const auto cloud = sample_gaussian(GaussianSpec({1.0, 0.5, 2.0}), 800, 2);
  const auto family = standard_witnesses(cloud, 6, 9);
  const auto est = obs_diameter_lower(cloud, 0.25, family);
  REQUIRE(est.witness_index < family.size());
  std::vector<double> values;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    values.push_back(family[est.witness_index].eval(cloud.point(i)));
  CHECK(est.lower_bound == partial_diameter_1d(values, 0.25));
  CHECK(est.witness == family[est.witness_index].description);
  for (const auto& w : family) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < cloud.size(); ++i) vals.push_back(w.eval(cloud.point(i)));
    CHECK(partial_diameter_1d(vals, 0.25) <= est.lower_bound);
  }
  CHECK(est.lower_bound <= cloud_diameter(cloud));
}

TEST_CASE("witness family has the documented size") {
  const auto cloud = sample_gaussian(GaussianSpec({1.0, 1.0, 1.0, 1.0}), 5, 1);
  CHECK(standard_witnesses(cloud, 3, 1).size() == 4 + 3 + 3);
  CHECK(standard_witnesses(cloud, 8, 1).size() == 4 + 8 + 5);
}

TEST_CASE("pullback along a 1-Lipschitz map cannot increase the estimate's target") {
  const auto x = sample_gaussian(GaussianSpec({1.0, 2.0, 0.5, 1.5, 3.0}), 1500, 31);
  const auto y = project(x, 2);
  PointMap f = [](std::span<const double> p) { return std::vector<double>(p.begin(), p.begin() + 2); };
  const auto family_y = standard_witnesses(y, 6, 7);
  auto family_x = standard_witnesses(x, 6, 7);
  const auto pulled = pull_back(family_y, f, "first-two");
  family_x.insert(family_x.end(), pulled.begin(), pulled.end());
  for (double kappa : {0.05, 0.2, 0.5}) {
    const auto ey = obs_diameter_lower(y, kappa, family_y);
    const auto ex = obs_diameter_lower(x, kappa, family_x);
    CHECK(ey.lower_bound <= ex.lower_bound);
  }
}

TEST_CASE("domination by projection has no Lipschitz violation") {
  const auto x = sample_gaussian(GaussianSpec({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}), 150, 3);
  CloudSampler target = [](std::size_t m, std::uint64_t s) {
    return sample_gaussian(GaussianSpec({1.0, 1.0, 1.0}), m, s);
  };
  DominationOptions opts;
  opts.full_prokhorov = false;
  const auto rep = check_domination(ProjectionMap{3}, x, target, 12, opts);
  CHECK(rep.lip_violation == 0.0);
  CHECK(rep.pairs == 150 * 149 / 2);
  CHECK(std::isnan(rep.dp_pushforward));

  const auto big = sample_gaussian(GaussianSpec({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}), 400, 3);
  opts.max_pairs = 5000;
  const auto sampled = check_domination(ProjectionMap{3}, big, target, 12, opts);
  CHECK(sampled.pairs == 5000);
  CHECK(sampled.lip_violation == 0.0);
}

TEST_CASE("domination between ellipsoids by axis scaling") {
  const std::size_t n = 50;
  const std::size_t m = 5000;
  std::vector<double> alpha(n), beta(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = 1.0 / static_cast<double>(i + 1);
    beta[i] = 0.5 / static_cast<double>(i + 1);
  }
  const auto big = EllipsoidSpec::from_normalized(EllipsoidKind::Solid, alpha);
  const auto small = EllipsoidSpec::from_normalized(EllipsoidKind::Solid, beta);
  std::vector<double> ratios(n);
  for (std::size_t i = 0; i < n; ++i)
    ratios[i] = small.semiaxes()[i] / big.semiaxes()[i];
  const auto x = sample_ellipsoid(big, m, 41);
  CloudSampler target = [small](std::size_t mm, std::uint64_t s) {
    return sample_ellipsoid(small, mm, s);
  };
  DominationOptions opts;
  opts.full_prokhorov = false;
  const auto rep = check_domination(ScaleMap{ratios}, x, target, 5, opts);
  CHECK(rep.lip_violation == 0.0);
  CHECK(rep.dp_marginal <= 0.05);

  std::vector<double> expand(n, 1.0);
  expand[0] = 1.2;
  const auto bad = check_domination(ScaleMap{expand}, x, target, 5, opts);
  CHECK(bad.lip_violation > 0.0);
  CHECK(bad.lip_violation <= 0.2 + 1e-12);
}

TEST_CASE("dissipation series") {
  SUBCASE("identical clouds give a flat series") {
    const auto c = sample_gaussian(GaussianSpec({1.0, 2.0}), 3000, 6);
    const std::vector<PointCloud> clouds{c, c, c, c};
    const auto s = dissipation_series(clouds, 0.1, 4, 2);
    CHECK(s.slope == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(s.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(s.strictly_increasing);
  }
  SUBCASE("linearly growing line Gaussians give a linear series") {
    std::vector<PointCloud> clouds;
    for (std::size_t j = 1; j <= 5; ++j)
      clouds.push_back(sample_gaussian(GaussianSpec({static_cast<double>(j)}), 20000, 100 + j));
    const auto s = dissipation_series(clouds, 0.1, 4, 2);
    const double unit = 2.0 * oracle::normal_quantile(0.95);
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(s.estimates[j].lower_bound / static_cast<double>(j + 1) ==
            doctest::Approx(unit).epsilon(0.1));
    CHECK(s.slope == doctest::Approx(unit).epsilon(0.1));
    CHECK(s.strictly_increasing);
    CHECK(s.ratio == doctest::Approx(5.0).epsilon(0.1));
  }
}
