// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference computations. Slow on purpose: each one follows a
// definition directly and shares no code with the library.

#ifndef MMLAB_TESTS_ORACLES_HPP
#define MMLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using Points = std::vector<std::vector<double>>;

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// inf{eps : mu(B_eps(A)) >= nu(A) - eps for all A}, closed balls. Only sets of
// nu-atoms matter, and the worst-case deficit is a step function of eps that
// changes at pairwise distances, so scanning those levels is exact.
inline double prokhorov_subsets(const Points& x, const std::vector<double>& wx, const Points& y,
                                const std::vector<double>& wy) {
  std::vector<double> levels{0.0};
  for (const auto& a : x)
    for (const auto& b : y) levels.push_back(dist(a, b));
  std::sort(levels.begin(), levels.end());
  const std::size_t ny = y.size();
  double best = 1.0;
  for (double eps : levels) {
    double deficit = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << ny); ++mask) {
      double nu_a = 0.0;
      for (std::size_t j = 0; j < ny; ++j)
        if (mask >> j & 1U) nu_a += wy[j];
      double mu_ball = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
          if ((mask >> j & 1U) && dist(x[i], y[j]) <= eps) {
            mu_ball += wx[i];
            break;
          }
        }
      }
      deficit = std::max(deficit, nu_a - mu_ball);
    }
    best = std::min(best, std::max(eps, deficit));
  }
  return best;
}

inline double wp_permutations(const Points& x, const Points& y, double p) {
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = INFINITY;
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) c += std::pow(dist(x[i], y[perm[i]]), p);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::pow(best / static_cast<double>(x.size()), 1.0 / p);
}

// Smallest eps with #{d_i > eps}/m <= eps, checked at every candidate.
inline double kyfan_scan(const std::vector<double>& d) {
  const double m = static_cast<double>(d.size());
  std::vector<double> cand{0.0, 1.0};
  for (double v : d) cand.push_back(v);
  for (std::size_t k = 0; k <= d.size(); ++k) cand.push_back(static_cast<double>(k) / m);
  double best = INFINITY;
  for (double eps : cand) {
    double above = 0.0;
    for (double v : d)
      if (v > eps) above += 1.0;
    if (above / m <= eps) best = std::min(best, eps);
  }
  return best;
}

// Gamma(s)^-1 int_0^x t^{s-1} e^{-t} dt by adaptive Gauss-Kronrod on pieces.
inline double reg_lower_gamma_quadrature(double s, double x) {
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(s);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp((s - 1.0) * std::log(t) - t - lg);
  };
  // substitution t = u^2 removes the endpoint singularity when s < 1
  auto g = [&](double u) { return 2.0 * u * f(u * u); };
  const double top = std::sqrt(x);
  const int pieces = 64;
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double a = top * k / pieces;
    const double b = top * (k + 1) / pieces;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 8, 1e-14);
  }
  return total;
}

inline double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

inline double normal_cdf(double z) {
  return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

}  // namespace oracle

#endif  // MMLAB_TESTS_ORACLES_HPP
