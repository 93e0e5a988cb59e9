// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_OBSERVABLES_HPP
#define MMLAB_OBSERVABLES_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mmlab/metrics.hpp"
#include "mmlab/point_cloud.hpp"

namespace mmlab {

/// Exact (1 - kappa)-partial diameter of the empirical measure on the line:
/// the shortest window covering ceil((1 - kappa) m) order statistics.
double partial_diameter_1d(std::vector<double> samples, double kappa);

/// A real function on the cloud's ambient space that is 1-Lipschitz by
/// construction (coordinate, unit-vector projection, distance to an anchor,
/// or a pullback of such a function along a 1-Lipschitz map).
struct Witness {
  std::string description;
  std::function<double(std::span<const double>)> eval;
};

using WitnessFamily = std::vector<Witness>;

/// Coordinates, n_directions seeded random unit vectors, and distances to
/// min(m, n_directions) seeded random sample points.
WitnessFamily standard_witnesses(const PointCloud& cloud, std::size_t n_directions,
                                 std::uint64_t seed);

using PointMap = std::function<std::vector<double>(std::span<const double>)>;

/// g -> g o f for every g in `family`; f must be 1-Lipschitz for the result to
/// remain a witness family.
WitnessFamily pull_back(const WitnessFamily& family, PointMap f, const std::string& map_name);

/// Certified lower bound on ObsDiam(X; -kappa) from an explicit witness family.
struct ObsDiamEstimate {
  double kappa = 0.0;
  double lower_bound = 0.0;
  std::string witness;
  std::size_t witness_index = 0;
};

ObsDiamEstimate obs_diameter_lower(const PointCloud& cloud, double kappa,
                                   const WitnessFamily& family);
ObsDiamEstimate obs_diameter_lower(const PointCloud& cloud, double kappa,
                                   std::size_t n_directions, std::uint64_t seed);

/// Largest pairwise distance (exact, O(m^2)).
double cloud_diameter(const PointCloud& cloud);

struct ProjectionMap {
  std::size_t k = 1;
};
struct ScaleMap {
  std::vector<double> ratios;
};
using DominationMap = std::variant<ProjectionMap, ScaleMap>;

PointCloud apply_domination_map(const DominationMap& map, const PointCloud& cloud);

struct DominationOptions {
  std::size_t max_pairs = 20000;
  double tol = kDefaultProkhorovTol;
  bool full_prokhorov = true;
};

struct DominationReport {
  double lip_violation = 0.0;  ///< max over sampled pairs of ratio - 1, clamped at 0
  double dp_pushforward = 0.0; ///< dP(f(X), fresh Y) on the full clouds
  double dp_marginal = 0.0;    ///< max dP over first-coordinate and norm marginals
  std::size_t pairs = 0;
};

using CloudSampler = std::function<PointCloud(std::size_t m, std::uint64_t seed)>;

DominationReport check_domination(const DominationMap& map, const PointCloud& x,
                                  const CloudSampler& y_sampler, std::uint64_t seed,
                                  const DominationOptions& options = {});

struct DissipationSeries {
  std::vector<ObsDiamEstimate> estimates;
  double slope = 0.0;  ///< least-squares slope of lower bounds against index
  double ratio = 0.0;  ///< last / first (infinite if first is zero)
  bool strictly_increasing = false;
};

DissipationSeries dissipation_series(std::span<const PointCloud> clouds, double kappa,
                                     std::size_t n_directions, std::uint64_t seed);

}  // namespace mmlab

#endif  // MMLAB_OBSERVABLES_HPP
