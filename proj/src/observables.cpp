// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mmlab/rng.hpp"
#include "mmlab/stats.hpp"

namespace mmlab {

double partial_diameter_1d(std::vector<double> samples, double kappa) {
  if (samples.empty()) throw std::invalid_argument("partial_diameter_1d: no samples");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("partial_diameter_1d: kappa must lie in (0,1)");
  }
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  // mass >= 1 - kappa; the relative slack absorbs rounding in (1 - kappa) * m
  auto window = static_cast<std::size_t>(std::ceil((1.0 - kappa) * m * (1.0 - 1e-12)));
  window = std::clamp<std::size_t>(window, 1, samples.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + window <= samples.size(); ++i) {
    best = std::min(best, samples[i + window - 1] - samples[i]);
  }
  return best;
}

WitnessFamily standard_witnesses(const PointCloud& cloud, std::size_t n_directions,
                                 std::uint64_t seed) {
  const std::size_t n = cloud.dim();
  WitnessFamily family;
  family.reserve(n + 2 * n_directions);
  for (std::size_t j = 0; j < n; ++j) {
    family.push_back({"coordinate " + std::to_string(j + 1),
                      [j](std::span<const double> x) { return x[j]; }});
  }
  Engine engine = make_engine(derive_seed(seed, "witness-directions"));
  std::normal_distribution<double> normal;
  for (std::size_t d = 0; d < n_directions; ++d) {
    std::vector<double> u(n);
    double s = 0.0;
    do {
      s = 0.0;
      for (double& v : u) {
        v = normal(engine);
        s += v * v;
      }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : u) v *= inv;
    family.push_back({"direction " + std::to_string(d + 1),
                      [u = std::move(u)](std::span<const double> x) {
                        double t = 0.0;
                        for (std::size_t i = 0; i < x.size(); ++i) t += u[i] * x[i];
                        return t;
                      }});
  }
  Engine anchor_engine = make_engine(derive_seed(seed, "witness-anchors"));
  const std::size_t n_anchors = std::min(cloud.size(), n_directions);
  std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
  for (std::size_t a = 0; a < n_anchors; ++a) {
    const std::size_t idx = pick(anchor_engine);
    const auto p = cloud.point(idx);
    std::vector<double> anchor(p.begin(), p.end());
    family.push_back({"distance to sample " + std::to_string(idx),
                      [anchor = std::move(anchor)](std::span<const double> x) {
                        return distance(x, anchor);
                      }});
  }
  return family;
}

WitnessFamily pull_back(const WitnessFamily& family, PointMap f, const std::string& map_name) {
  WitnessFamily out;
  out.reserve(family.size());
  for (const auto& w : family) {
    out.push_back({w.description + " o " + map_name,
                   [g = w.eval, f](std::span<const double> x) { return g(f(x)); }});
  }
  return out;
}

ObsDiamEstimate obs_diameter_lower(const PointCloud& cloud, double kappa,
                                   const WitnessFamily& family) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("obs_diameter_lower: kappa must lie in (0,1)");
  }
  ObsDiamEstimate best;
  best.kappa = kappa;
  best.lower_bound = 0.0;
  best.witness = "none";
  std::vector<double> values(cloud.size());
  for (std::size_t c = 0; c < family.size(); ++c) {
    for (std::size_t i = 0; i < cloud.size(); ++i) values[i] = family[c].eval(cloud.point(i));
    const double pd = partial_diameter_1d(values, kappa);
    // strict comparison keeps the lowest index on ties
    if (c == 0 || pd > best.lower_bound) {
      best.lower_bound = pd;
      best.witness = family[c].description;
      best.witness_index = c;
    }
  }
  return best;
}

ObsDiamEstimate obs_diameter_lower(const PointCloud& cloud, double kappa,
                                   std::size_t n_directions, std::uint64_t seed) {
  return obs_diameter_lower(cloud, kappa, standard_witnesses(cloud, n_directions, seed));
}

double cloud_diameter(const PointCloud& cloud) {
  double best = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      best = std::max(best, distance(cloud.point(i), cloud.point(j)));
    }
  }
  return best;
}

PointCloud apply_domination_map(const DominationMap& map, const PointCloud& cloud) {
  if (const auto* proj = std::get_if<ProjectionMap>(&map)) return project(cloud, proj->k);
  const auto& scale = std::get<ScaleMap>(map);
  return linear_scale(cloud, scale.ratios);
}

namespace {

double marginal_prokhorov(const PointCloud& a, const PointCloud& b, double tol) {
  const double first = prokhorov_empirical(PointCloud(1, a.column(0)), PointCloud(1, b.column(0)), tol);
  auto norms = [](const PointCloud& c) {
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = norm(c.point(i));
    return PointCloud(1, std::move(out));
  };
  return std::max(first, prokhorov_empirical(norms(a), norms(b), tol));
}

}  // namespace

DominationReport check_domination(const DominationMap& map, const PointCloud& x,
                                  const CloudSampler& y_sampler, std::uint64_t seed,
                                  const DominationOptions& options) {
  const PointCloud fx = apply_domination_map(map, x);
  DominationReport report;

  const std::size_t m = x.size();
  const std::size_t all_pairs = m * (m - 1) / 2;
  auto ratio_excess = [&](std::size_t i, std::size_t j) {
    const double d = distance(x.point(i), x.point(j));
    if (d == 0.0) return 0.0;
    return distance(fx.point(i), fx.point(j)) / d - 1.0;
  };
  if (all_pairs <= options.max_pairs) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        report.lip_violation = std::max(report.lip_violation, ratio_excess(i, j));
        ++report.pairs;
      }
    }
  } else {
    Engine engine = make_engine(derive_seed(seed, "domination-pairs"));
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    while (report.pairs < options.max_pairs) {
      const std::size_t i = pick(engine);
      const std::size_t j = pick(engine);
      if (i == j) continue;
      report.lip_violation = std::max(report.lip_violation, ratio_excess(i, j));
      ++report.pairs;
    }
  }

  const PointCloud y = y_sampler(m, derive_seed(seed, "domination-target"));
  if (y.dim() != fx.dim()) throw std::invalid_argument("check_domination: target dim mismatch");
  report.dp_marginal = marginal_prokhorov(fx, y, options.tol);
  report.dp_pushforward =
      options.full_prokhorov ? prokhorov_empirical(fx, y, options.tol)
                             : std::numeric_limits<double>::quiet_NaN();
  return report;
}

DissipationSeries dissipation_series(std::span<const PointCloud> clouds, double kappa,
                                     std::size_t n_directions, std::uint64_t seed) {
  DissipationSeries out;
  std::vector<double> idx, values;
  for (std::size_t j = 0; j < clouds.size(); ++j) {
    // one seed for every j: the same directions and anchor indices throughout
    out.estimates.push_back(obs_diameter_lower(clouds[j], kappa, n_directions, seed));
    idx.push_back(static_cast<double>(j + 1));
    values.push_back(out.estimates.back().lower_bound);
  }
  if (values.size() >= 2) {
    out.slope = ls_slope(idx, values);
    out.ratio = values.front() > 0.0 ? values.back() / values.front()
                                     : std::numeric_limits<double>::infinity();
    out.strictly_increasing = true;
    for (std::size_t j = 1; j < values.size(); ++j) {
      if (!(values[j] > values[j - 1])) out.strictly_increasing = false;
    }
  }
  return out;
}

}  // namespace mmlab
