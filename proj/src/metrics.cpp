// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mmlab/assignment.hpp"
#include "mmlab/maxflow.hpp"
#include "mmlab/rng.hpp"

namespace mmlab {

namespace {

constexpr double kWeightTol = 1e-12;

void check_weights(std::span<const double> w, std::size_t count, const char* what) {
  if (w.size() != count) throw std::invalid_argument(std::string(what) + ": weight count");
  double s = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": weights must be nonnegative");
    }
    s += v;
  }
  if (std::abs(s - 1.0) > kWeightTol * std::max<double>(1.0, static_cast<double>(count))) {
    throw std::invalid_argument(std::string(what) + ": weights must sum to 1");
  }
}

void check_same_dim(const PointCloud& x, const PointCloud& y, const char* what) {
  if (x.dim() != y.dim()) throw std::invalid_argument(std::string(what) + ": dim mismatch");
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("prokhorov: tol must be positive");
}

struct PairEdge {
  double d;
  std::uint32_t i;
  std::uint32_t j;
};

// All pairs at distance <= cap sorted by distance. cap = 1 is enough for
// every eps because eps = 1 is always feasible.
std::vector<PairEdge> close_pairs(const PointCloud& x, const PointCloud& y, double cap = 1.0) {
  std::vector<PairEdge> edges;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto xi = x.point(i);
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double d = distance(xi, y.point(j));
      if (d <= cap) {
        edges.push_back({d, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const PairEdge& a, const PairEdge& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return edges;
}

std::size_t prefix_within(const std::vector<PairEdge>& edges, double eps) {
  return static_cast<std::size_t>(
      std::upper_bound(edges.begin(), edges.end(), eps,
                       [](double e, const PairEdge& p) { return e < p.d; }) -
      edges.begin());
}

// Uniform measures as integer masses: x atoms carry cx units, y atoms cy units,
// so both sides total mx * cx == my * cy.
struct UniformMasses {
  std::int64_t cx;
  std::int64_t cy;
  std::int64_t total;
};

UniformMasses uniform_masses(std::size_t mx, std::size_t my) {
  const auto g = std::gcd(mx, my);
  const auto cx = static_cast<std::int64_t>(my / g);
  const auto cy = static_cast<std::int64_t>(mx / g);
  return {cx, cy, cx * static_cast<std::int64_t>(mx)};
}

std::int64_t uniform_flow(std::size_t mx, std::size_t my, const std::vector<PairEdge>& edges,
                          std::size_t count) {
  const UniformMasses um = uniform_masses(mx, my);
  const std::size_t source = mx + my;
  const std::size_t sink = source + 1;
  FlowNetwork<std::int64_t> net(mx + my + 2);
  net.reserve_edges(mx + my + count);
  for (std::size_t i = 0; i < mx; ++i) net.add_edge(source, i, um.cx);
  for (std::size_t j = 0; j < my; ++j) net.add_edge(mx + j, sink, um.cy);
  for (std::size_t e = 0; e < count; ++e) net.add_edge(edges[e].i, mx + edges[e].j, um.cx);
  return net.max_flow(source, sink);
}

double weighted_flow(std::span<const double> wx, std::span<const double> wy,
                     const std::vector<PairEdge>& edges, std::size_t count) {
  const std::size_t mx = wx.size();
  const std::size_t my = wy.size();
  const std::size_t source = mx + my;
  const std::size_t sink = source + 1;
  FlowNetwork<double> net(mx + my + 2, 1e-15);
  net.reserve_edges(mx + my + count);
  for (std::size_t i = 0; i < mx; ++i) net.add_edge(source, i, wx[i]);
  for (std::size_t j = 0; j < my; ++j) net.add_edge(mx + j, sink, wy[j]);
  for (std::size_t e = 0; e < count; ++e) net.add_edge(edges[e].i, mx + edges[e].j, wx[edges[e].i]);
  return net.max_flow(source, sink);
}

bool mass_suffices(double fraction, double eps) { return fraction + 1e-12 >= 1.0 - eps; }

// Exact maximal coupled mass on {|x - y| <= eps} for uniform samples on the
// line. Each x's admissible window [x - eps, x + eps] moves monotonically, so
// serving x's in order from the leftmost available y is optimal.
std::int64_t line_matching(const std::vector<double>& xs, const std::vector<double>& ys,
                           double eps, const UniformMasses& um) {
  std::vector<std::int64_t> left(ys.size(), um.cy);
  std::size_t p = 0;
  std::int64_t matched = 0;
  for (double x : xs) {
    std::int64_t need = um.cx;
    while (p < ys.size() && (ys[p] < x - eps || left[p] == 0)) ++p;
    std::size_t q = p;
    while (need > 0 && q < ys.size() && ys[q] <= x + eps) {
      const std::int64_t take = std::min(need, left[q]);
      left[q] -= take;
      need -= take;
      matched += take;
      if (left[q] == 0) ++q;
    }
  }
  return matched;
}

template <typename Feasible>
double bisect(Feasible&& feasible, double tol, double lo = 0.0, double hi = 1.0) {
  if (lo == 0.0 && feasible(0.0)) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

DiscretePair::DiscretePair(PointCloud support, std::vector<double> weights_mu,
                           std::vector<double> weights_nu)
    : support_(std::move(support)), mu_(std::move(weights_mu)), nu_(std::move(weights_nu)) {
  check_weights(mu_, support_.size(), "DiscretePair");
  check_weights(nu_, support_.size(), "DiscretePair");
}

double tv_discrete(const DiscretePair& pair) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.mu().size(); ++i) s += std::abs(pair.mu()[i] - pair.nu()[i]);
  return std::min(1.0, 0.5 * s);
}

CouplingFeasibility prokhorov_feasibility(const PointCloud& x, const PointCloud& y, double eps) {
  check_same_dim(x, y, "prokhorov_feasibility");
  const auto edges = close_pairs(x, y);
  const UniformMasses um = uniform_masses(x.size(), y.size());
  const auto flow = uniform_flow(x.size(), y.size(), edges, prefix_within(edges, eps));
  CouplingFeasibility out;
  out.eps = eps;
  out.flow = static_cast<double>(flow) / static_cast<double>(um.total);
  out.feasible = eps >= 1.0 || mass_suffices(out.flow, eps);
  return out;
}

double prokhorov_empirical(const PointCloud& x, const PointCloud& y, double tol) {
  check_same_dim(x, y, "prokhorov_empirical");
  check_tol(tol);
  const UniformMasses um = uniform_masses(x.size(), y.size());
  const double total = static_cast<double>(um.total);
  if (x.dim() == 1) {
    std::vector<double> xs = x.coords();
    std::vector<double> ys = y.coords();
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    return bisect(
        [&](double eps) {
          return mass_suffices(static_cast<double>(line_matching(xs, ys, eps, um)) / total, eps);
        },
        tol);
  }
  // Short edges first: when eps = kFirstCap already works the long pairs are
  // never needed, which keeps the edge list small for tight clouds.
  constexpr double kFirstCap = 0.125;
  auto feasible_with = [&](const std::vector<PairEdge>& edges) {
    return [&](double eps) {
      const auto flow = uniform_flow(x.size(), y.size(), edges, prefix_within(edges, eps));
      return mass_suffices(static_cast<double>(flow) / total, eps);
    };
  };
  {
    const auto short_edges = close_pairs(x, y, kFirstCap);
    const auto feasible = feasible_with(short_edges);
    if (feasible(kFirstCap)) return bisect(feasible, tol, 0.0, kFirstCap);
  }
  const auto edges = close_pairs(x, y);
  return bisect(feasible_with(edges), tol, kFirstCap, 1.0);
}

double prokhorov_weighted(const PointCloud& x, std::span<const double> wx, const PointCloud& y,
                          std::span<const double> wy, double tol) {
  check_same_dim(x, y, "prokhorov_weighted");
  check_weights(wx, x.size(), "prokhorov_weighted");
  check_weights(wy, y.size(), "prokhorov_weighted");
  check_tol(tol);
  const auto edges = close_pairs(x, y);
  return bisect(
      [&](double eps) {
        return mass_suffices(weighted_flow(wx, wy, edges, prefix_within(edges, eps)), eps);
      },
      tol);
}

double prokhorov_exact(const PointCloud& x, std::span<const double> wx, const PointCloud& y,
                       std::span<const double> wy) {
  check_same_dim(x, y, "prokhorov_exact");
  check_weights(wx, x.size(), "prokhorov_exact");
  check_weights(wy, y.size(), "prokhorov_exact");
  const auto edges = close_pairs(x, y);
  std::vector<double> levels{0.0};
  for (const auto& e : edges) {
    if (e.d > levels.back()) levels.push_back(e.d);
  }
  // deficit(k) = 1 - F(levels[k]) is nonincreasing, levels increasing: the
  // minimum of max(level, deficit) sits at their crossing.
  auto deficit = [&](std::size_t k) {
    return std::max(0.0, 1.0 - weighted_flow(wx, wy, edges, prefix_within(edges, levels[k])));
  };
  std::size_t lo = 0;
  std::size_t hi = levels.size();  // first k with levels[k] >= deficit(k)
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (levels[mid] >= deficit(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  double best = 1.0;
  if (lo < levels.size()) best = std::min(best, levels[lo]);
  if (lo > 0) best = std::min(best, deficit(lo - 1));
  return best;
}

double prokhorov_discrete(const DiscretePair& pair, double tol) {
  return prokhorov_weighted(pair.support(), pair.mu(), pair.support(), pair.nu(), tol);
}

double kyfan_pairs(std::span<const double> distances) {
  if (distances.empty()) throw std::invalid_argument("kyfan_pairs: empty input");
  std::vector<double> d(distances.begin(), distances.end());
  for (double v : d) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("kyfan_pairs: distances must be nonnegative and finite");
    }
  }
  std::sort(d.begin(), d.end());
  const std::size_t m = d.size();
  const double md = static_cast<double>(m);
  auto exceed = [&](double eps) {
    return m - static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), eps) - d.begin());
  };
  double best = 1.0;  // at eps = 1 the condition always holds
  for (std::size_t k = 0; k <= m; ++k) {
    if (exceed(static_cast<double>(k) / md) <= k) {
      best = std::min(best, static_cast<double>(k) / md);
      break;  // k/m increasing: first hit is the smallest
    }
  }
  for (double v : d) {
    if (v >= best) break;
    if (static_cast<double>(exceed(v)) <= v * md) {
      best = v;
      break;
    }
  }
  return best;
}

double wasserstein_1d(std::vector<double> xs, std::vector<double> ys, double p) {
  if (xs.size() != ys.size()) throw std::invalid_argument("wasserstein_1d: length mismatch");
  if (xs.empty()) throw std::invalid_argument("wasserstein_1d: empty input");
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_1d: p must be >= 1");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += std::pow(std::abs(xs[i] - ys[i]), p);
  return std::pow(s / static_cast<double>(xs.size()), 1.0 / p);
}

std::vector<std::size_t> optimal_matching(const PointCloud& x, const PointCloud& y, double p) {
  check_same_dim(x, y, "wasserstein_assignment");
  if (x.size() != y.size()) {
    throw std::invalid_argument("wasserstein_assignment: sample counts differ (subsample first)");
  }
  if (x.size() > kAssignmentGuard) {
    throw std::invalid_argument("wasserstein_assignment: more than 4096 points");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_assignment: p must be >= 1");
  const std::size_t m = x.size();
  std::vector<double> cost(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto xi = x.point(i);
    for (std::size_t j = 0; j < m; ++j) {
      const auto yj = y.point(j);
      if (p == 2.0) {
        double s = 0.0;
        for (std::size_t k = 0; k < xi.size(); ++k) {
          const double d = xi[k] - yj[k];
          s += d * d;
        }
        cost[i * m + j] = s;
      } else {
        cost[i * m + j] = std::pow(distance(xi, yj), p);
      }
    }
  }
  return solve_assignment(cost, m).row_to_col;
}

double wasserstein_assignment(const PointCloud& x, const PointCloud& y, double p) {
  const auto match = optimal_matching(x, y, p);
  double s = 0.0;
  for (std::size_t i = 0; i < match.size(); ++i) {
    const double d = distance(x.point(i), y.point(match[i]));
    s += p == 2.0 ? d * d : std::pow(d, p);
  }
  return std::pow(s / static_cast<double>(match.size()), 1.0 / p);
}

double wasserstein_to_point(const PointCloud& x, std::span<const double> point, double p) {
  if (point.size() != x.dim()) throw std::invalid_argument("wasserstein_to_point: dim mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("wasserstein_to_point: p must be >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = distance(x.point(i), point);
    s += p == 2.0 ? d * d : std::pow(d, p);
  }
  return std::pow(s / static_cast<double>(x.size()), 1.0 / p);
}

double gelbrich_w2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = i < a.size() ? a[i] : 0.0;
    const double bi = i < b.size() ? b[i] : 0.0;
    s += (ai - bi) * (ai - bi);
  }
  return std::sqrt(s);
}

double gelbrich_w2(const GaussianSpec& a, const GaussianSpec& b) {
  return gelbrich_w2(a.stddevs(), b.stddevs());
}

PointCloud subsample(const PointCloud& cloud, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > cloud.size()) throw std::invalid_argument("subsample: bad size");
  std::vector<std::size_t> idx(cloud.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Engine engine = make_engine(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(engine)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  const std::size_t n = cloud.dim();
  std::vector<double> coords;
  coords.reserve(k * n);
  for (std::size_t i : idx) {
    const auto p = cloud.point(i);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(n, std::move(coords), {seed, cloud.provenance().stream + "/subsample"});
}

BoxBound box_upper_bound(const PointCloud& x, const PointCloud& y, double trim) {
  check_same_dim(x, y, "box_upper_bound");
  if (x.size() != y.size()) throw std::invalid_argument("box_upper_bound: sample counts differ");
  if (!(trim >= 0.0 && trim < 0.5)) throw std::invalid_argument("box_upper_bound: trim in [0,0.5)");
  const std::size_t m = x.size();
  const auto match = optimal_matching(x, y, 2.0);

  std::vector<double> mapped;
  mapped.reserve(m * y.dim());
  for (std::size_t i = 0; i < m; ++i) {
    const auto p = y.point(match[i]);
    mapped.insert(mapped.end(), p.begin(), p.end());
  }
  const PointCloud fx(y.dim(), std::move(mapped));

  std::vector<double> distortion(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = std::abs(distance(x.point(i), x.point(j)) - distance(fx.point(i), fx.point(j)));
      distortion[i * m + j] = d;
      distortion[j * m + i] = d;
    }
  }

  BoxBound out;
  out.pushforward_dp = prokhorov_empirical(fx, y);

  std::vector<char> alive(m, 1);
  std::vector<double> row_max(m, 0.0);
  auto refresh = [&]() {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      double r = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (alive[j]) r = std::max(r, distortion[i * m + j]);
      }
      row_max[i] = r;
      worst = std::max(worst, r);
    }
    return worst;
  };

  const auto max_removed = static_cast<std::size_t>(std::floor(trim * static_cast<double>(m)));
  double worst = refresh();
  out.distortion = worst;
  out.removed_fraction = 0.0;
  out.bound = 3.0 * std::max({worst, 0.0, out.pushforward_dp});
  for (std::size_t removed = 1; removed <= max_removed && worst > 0.0; ++removed) {
    std::size_t victim = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (alive[i] && (victim == m || row_max[i] > row_max[victim])) victim = i;
    }
    alive[victim] = 0;
    worst = refresh();
    const double frac = static_cast<double>(removed) / static_cast<double>(m);
    const double candidate = 3.0 * std::max({worst, frac, out.pushforward_dp});
    if (candidate < out.bound) {
      out.bound = candidate;
      out.distortion = worst;
      out.removed_fraction = frac;
    }
  }
  return out;
}

}  // namespace mmlab
