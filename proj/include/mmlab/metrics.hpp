// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_METRICS_HPP
#define MMLAB_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mmlab/measures.hpp"
#include "mmlab/point_cloud.hpp"

namespace mmlab {

/// Two probability vectors on a shared finite support.
class DiscretePair {
 public:
  DiscretePair(PointCloud support, std::vector<double> weights_mu, std::vector<double> weights_nu);

  [[nodiscard]] const PointCloud& support() const noexcept { return support_; }
  [[nodiscard]] const std::vector<double>& mu() const noexcept { return mu_; }
  [[nodiscard]] const std::vector<double>& nu() const noexcept { return nu_; }

 private:
  PointCloud support_;
  std::vector<double> mu_;
  std::vector<double> nu_;
};

double tv_discrete(const DiscretePair& pair);

/// Strassen feasibility at eps: can a coupling put mass >= 1 - eps on pairs
/// at distance <= eps?
struct CouplingFeasibility {
  double eps = 0.0;
  double flow = 0.0;  ///< coupled mass on {d <= eps}
  bool feasible = false;
};

CouplingFeasibility prokhorov_feasibility(const PointCloud& x, const PointCloud& y, double eps);

constexpr double kDefaultProkhorovTol = 1e-3;

/// Prokhorov distance between uniform empirical measures by bisection on eps
/// with max-flow feasibility. Returns the upper end of the final bracket.
/// One-dimensional clouds use an exact greedy matching on sorted samples.
double prokhorov_empirical(const PointCloud& x, const PointCloud& y,
                           double tol = kDefaultProkhorovTol);

/// Weighted version (bisection with floating max-flow).
double prokhorov_weighted(const PointCloud& x, std::span<const double> wx, const PointCloud& y,
                          std::span<const double> wy, double tol = kDefaultProkhorovTol);

/// Exact Prokhorov distance between finitely supported measures: the
/// minimum over distance levels d_k of max(d_k, 1 - F(d_k)), where F is the
/// max-flow on pairs within d_k.
double prokhorov_exact(const PointCloud& x, std::span<const double> wx, const PointCloud& y,
                       std::span<const double> wy);

/// Prokhorov distance of the two measures of a shared-support pair.
double prokhorov_discrete(const DiscretePair& pair, double tol = kDefaultProkhorovTol);

/// Ky Fan distance between maps f, g on a uniform m-point space, given the m
/// values d(f(w_i), g(w_i)): smallest eps with #{d_i > eps}/m <= eps.
double kyfan_pairs(std::span<const double> distances);

/// Exact p-Wasserstein between equal-size samples on the line (sorted matching).
double wasserstein_1d(std::vector<double> xs, std::vector<double> ys, double p);

constexpr std::size_t kAssignmentGuard = 4096;

/// Exact p-Wasserstein between equal-size uniform clouds via optimal assignment.
double wasserstein_assignment(const PointCloud& x, const PointCloud& y, double p);

/// Optimal assignment for cost d(x_i, y_j)^p; row_to_col[i] is the partner of x_i.
std::vector<std::size_t> optimal_matching(const PointCloud& x, const PointCloud& y, double p);

/// W_p between a uniform cloud and a Dirac mass at `point`.
double wasserstein_to_point(const PointCloud& x, std::span<const double> point, double p);

/// Closed-form W2 between centered diagonal Gaussians (zero-padded).
double gelbrich_w2(const GaussianSpec& a, const GaussianSpec& b);
double gelbrich_w2(std::span<const double> a, std::span<const double> b);

/// Uniform subsample of k points without replacement, original order kept.
PointCloud subsample(const PointCloud& cloud, std::size_t k, std::uint64_t seed);

struct BoxBound {
  double bound = 0.0;            ///< 3 * eps of the best eps-mm-isomorphism found
  double distortion = 0.0;       ///< max |d_X - d_Y| on the kept points
  double removed_fraction = 0.0;
  double pushforward_dp = 0.0;   ///< dP(f_* mu_X, mu_Y)
};

/// Upper bound on the box distance from an explicit eps-mm-isomorphism: the
/// W2-optimal bijection X -> Y, greedily trimmed by at most trim*m points of
/// largest distortion. A bijection onto Y's atoms pushes mu_X to mu_Y exactly,
/// so the Prokhorov term is zero.
BoxBound box_upper_bound(const PointCloud& x, const PointCloud& y, double trim);

}  // namespace mmlab

#endif  // MMLAB_METRICS_HPP
