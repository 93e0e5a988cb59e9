// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "mmlab/measures.hpp"
#include "mmlab/metrics.hpp"
#include "mmlab/observables.hpp"
#include "mmlab/parallel.hpp"
#include "mmlab/rng.hpp"
#include "mmlab/sequence.hpp"
#include "mmlab/stats.hpp"
#include "mmlab/transport.hpp"

namespace mmlab {

namespace {

const KeySpec kSeedKey{"seed", ValueType::UInt, "20260101", "master seed"};

std::vector<SuiteInfo> build_catalog() {
  std::vector<SuiteInfo> c;
  c.push_back(
      {"mb-law",
       "Maxwell-Boltzmann law: k-dimensional projections of normalized ellipsoid measures "
       "converge weakly to the Gaussian with variances a_i^2",
       {"j", "n", "k", "m", "dP", "seed"},
       {kSeedKey,
        {"family", ValueType::Text, "round", "round | geometric"},
        {"a", ValueType::Real, "1", "first semiaxis (round: all semiaxes)"},
        {"ratio", ValueType::Real, "0.5", "geometric ratio"},
        {"k", ValueType::UInt, "1", "projection dimension"},
        {"n_grid", ValueType::UIntList, "50,200,1000", "ambient dimensions"},
        {"m", ValueType::UInt, "5000", "samples per cloud"},
        {"trials", ValueType::UInt, "3", "trials per dimension"},
        {"kind", ValueType::Text, "surface", "surface | solid"},
        {"coupling", ValueType::Text, "common",
         "common: ellipsoid cloud is the transport image of the Gaussian cloud | independent"},
        {"tol", ValueType::Real, "0.001", "Prokhorov bisection tolerance"}}});
  c.push_back(
      {"sphere-w2",
       "limsup of W2(surface measure, Gaussian)^2 is at most sqrt(2)/e times the tail "
       "sum of a_i^2 beyond k",
       {"j", "n", "k", "m", "w2_sq", "bound", "bound_with_margin", "seed"},
       {kSeedKey,
        {"a", ValueType::Real, "0.5", "first semiaxis"},
        {"ratio", ValueType::Real, "0.5", "geometric ratio"},
        {"k", ValueType::UInt, "3", "tail cut"},
        {"n_grid", ValueType::UIntList, "500", "ambient dimensions"},
        {"m", ValueType::UInt, "2000", "samples per cloud"},
        {"margin", ValueType::Real, "0.02", "sampling margin added to the bound"},
        {"coupling", ValueType::Text, "independent", "independent | common"}}});
  c.push_back(
      {"solid-prokhorov",
       "Prokhorov distance between the solid ellipsoid measure and its Gaussian tends to "
       "zero when sum a_i^2 is finite",
       {"j", "n", "m", "dP_full", "dP_coord1", "dP_norm", "seed"},
       {kSeedKey,
        {"a", ValueType::Real, "0.5", "first semiaxis"},
        {"ratio", ValueType::Real, "0.5", "geometric ratio"},
        {"n_grid", ValueType::UIntList, "50,200,1000", "ambient dimensions"},
        {"m", ValueType::UInt, "2000", "samples per cloud"},
        {"coupling", ValueType::Text, "common", "common | independent"},
        {"tol", ValueType::Real, "0.001", "Prokhorov bisection tolerance"}}});
  c.push_back(
      {"region-mass",
       "the Gaussian mass of D (small leading direction cosines) intersected with F "
       "(gauge at least theta sqrt(n)) tends to one",
       {"j", "n", "m", "gauss_D", "gauss_DF", "surface_D", "solid_D", "seed"},
       {kSeedKey,
        {"head", ValueType::RealList, "1.5,1.2", "leading semiaxes"},
        {"a", ValueType::Real, "1", "remaining semiaxes"},
        {"n_grid", ValueType::UIntList, "200,2000", "ambient dimensions"},
        {"m", ValueType::UInt, "20000", "samples per measure"},
        {"N", ValueType::UInt, "3", "region D index bound"},
        {"eps", ValueType::Real, "0.1", "region D cosine bound"},
        {"theta", ValueType::Real, "0.9", "region F gauge factor"}}});
  c.push_back(
      {"lip-check",
       "operator norms of the transport differentials on D and F are at most "
       "sqrt(1 + C N eps)/theta; C is fitted",
       {"j", "n", "points", "max_opnorm_phiE", "max_opnorm_phiS", "bound", "fitted_C_phiE",
        "fitted_C_phiS", "degenerate", "seed"},
       {kSeedKey,
        {"a", ValueType::Real, "1", "round semiaxis"},
        {"n_grid", ValueType::UIntList, "200", "ambient dimensions"},
        {"points", ValueType::UInt, "1000", "probe points in D and F"},
        {"N", ValueType::UInt, "3", "region D index bound"},
        {"eps", ValueType::Real, "0.05", "region D cosine bound"},
        {"theta", ValueType::Real, "0.9", "region F gauge factor"},
        {"slack", ValueType::Real, "0.05", "relative slack on theta^-2"}}});
  c.push_back(
      {"dissipation",
       "a family whose largest semiaxis diverges infinitely dissipates; observable "
       "diameter lower bounds grow without bound",
       {"j", "n", "a1", "m", "obs_diam_lower", "witness", "seed"},
       {kSeedKey,
        {"growth", ValueType::Real, "2", "a_1j = growth^j"},
        {"a", ValueType::Real, "1", "remaining semiaxes"},
        {"n_grid", ValueType::UIntList, "50,100,150,200,250", "ambient dimension per j"},
        {"m", ValueType::UInt, "2000", "samples per cloud"},
        {"kind", ValueType::Text, "surface", "surface | solid"},
        {"kappa", ValueType::Real, "0.1", "partial diameter mass defect"},
        {"directions", ValueType::UInt, "8", "random directions and anchors"}}});
  c.push_back(
      {"dirac-w2",
       "W2 from the surface measure with semiaxes sqrt(n-1) b_ij to the Dirac mass at "
       "the origin, squared, tends to lim sum b_ij^2",
       {"j", "n", "m", "w2_sq", "limit_sum", "seed"},
       {kSeedKey,
        {"c", ValueType::Real, "1", "b_ij = c / sqrt(n(j))"},
        {"n_grid", ValueType::UIntList, "50,200,1000", "ambient dimensions"},
        {"m", ValueType::UInt, "5000", "samples per cloud"}}});
  c.push_back(
      {"box-trend",
       "box convergence of solid ellipsoids holds when sum_{i<=n(j)} (a_ij - a_i)^2 -> 0 "
       "and sum a_i^2 is finite; only upper bounds are computed",
       {"j", "n", "m", "deviation", "bound", "distortion", "removed_fraction", "seed"},
       {kSeedKey,
        {"a", ValueType::Real, "0.5", "first limit semiaxis"},
        {"ratio", ValueType::Real, "0.5", "geometric ratio of the limit"},
        {"c", ValueType::Real, "0.1", "perturbation a_ij = a_i + c j^-power"},
        {"power", ValueType::Real, "1", "perturbation decay"},
        {"n_grid", ValueType::UIntList, "10,20,30,40", "ambient dimension per j"},
        {"m", ValueType::UInt, "300", "samples per cloud"},
        {"trim", ValueType::Real, "0.1", "largest removable fraction"},
        {"coupling", ValueType::Text, "common",
         "common: both clouds are built from the same standard normals | independent"}}});
  c.push_back(
      {"criteria",
       "weak convergence to the limit Gaussian space becomes concentration iff the limit is "
       "l2, asymptotic concentration iff it tends to zero, box convergence iff the family "
       "l2-converges",
       {"j", "n", "deviation", "tail", "gaussian_w2_sq"},
       {kSeedKey,
        {"generator", ValueType::Text, "custom", "round | geometric | custom | explicit"},
        {"a", ValueType::Real, "0.5", "round value or first limit semiaxis"},
        {"ratio", ValueType::Real, "0.5", "geometric ratio"},
        {"c", ValueType::Real, "1", "custom perturbation a_ij = a_i + c j^-power"},
        {"power", ValueType::Real, "1", "custom perturbation decay"},
        {"n_grid", ValueType::UIntList, "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16",
         "dimension per j"},
        {"table", ValueType::RealList, "1", "explicit: rows of a_ij concatenated"},
        {"limit", ValueType::RealList, "1", "explicit: limit a_i (zero padded)"},
        {"horizon", ValueType::UInt, "4096", "limit terms used for sums and hints"},
        {"cauchy_tol", ValueType::Real, "1e-6", "tolerance of the convergence check"}}});
  return c;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::vector<std::size_t> dims_of(const Config& cfg, std::size_t min_dim) {
  std::vector<std::size_t> out;
  for (auto v : cfg.get_uint_list("n_grid")) {
    require(v >= min_dim, "n_grid entries must be at least " + std::to_string(min_dim));
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::size_t positive(const Config& cfg, const std::string& key) {
  const auto v = cfg.get_uint(key);
  require(v >= 1, key + " must be positive");
  return static_cast<std::size_t>(v);
}

double positive_real(const Config& cfg, const std::string& key) {
  const double v = cfg.get_real(key);
  require(v > 0.0, key + " must be positive");
  return v;
}

bool common_coupling(const Config& cfg) {
  const auto& c = cfg.get_text("coupling");
  require(c == "common" || c == "independent", "coupling must be common or independent");
  return c == "common";
}

EllipsoidKind kind_of(const Config& cfg) {
  const auto& k = cfg.get_text("kind");
  require(k == "surface" || k == "solid", "kind must be surface or solid");
  return k == "surface" ? EllipsoidKind::Surface : EllipsoidKind::Solid;
}

double geometric_tail_sq(double a, double ratio, std::size_t k) {
  return a * a * std::pow(ratio, 2.0 * static_cast<double>(k)) / (1.0 - ratio * ratio);
}

std::uint64_t seed_of(std::uint64_t master, const std::string& suite, std::size_t j) {
  return derive_seed(master, suite, {j});
}

std::uint64_t trial_seed(std::uint64_t seed_j, std::size_t t, std::string_view role) {
  return derive_seed(seed_j, role, {t});
}

std::string flag(bool b) { return b ? "yes" : "no"; }

PointCloud marginal(const PointCloud& c, bool use_norm) {
  if (!use_norm) return PointCloud(1, c.column(0));
  std::vector<double> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = norm(c.point(i));
  return PointCloud(1, std::move(v));
}

// Ellipsoid cloud paired with a Gaussian cloud; under common coupling the
// ellipsoid cloud is the exact transport image of the Gaussian one.
std::pair<PointCloud, PointCloud> ellipsoid_and_gaussian(EllipsoidKind kind,
                                                         const std::vector<double>& axes,
                                                         std::size_t m, std::uint64_t seed,
                                                         bool common) {
  PointCloud g = sample_gaussian(GaussianSpec(axes), m, trial_seed(seed, 0, "gaussian"));
  if (common) {
    TransportMapSpec spec{kind == EllipsoidKind::Solid ? TransportKind::PhiE : TransportKind::PhiS,
                          axes, 0.9};
    PointCloud e = apply_transport(spec, g);
    return {std::move(e), std::move(g)};
  }
  PointCloud e = sample_ellipsoid(EllipsoidSpec::from_normalized(kind, axes), m,
                                  trial_seed(seed, 0, "ellipsoid"));
  return {std::move(e), std::move(g)};
}

double spearman_or_nan(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return spearman(x, y);
}

std::vector<double> as_doubles(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

// ---------------------------------------------------------------- mb-law

ExperimentReport run_mb_law(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t k = positive(cfg, "k");
  const std::size_t m = positive(cfg, "m");
  const std::size_t trials = positive(cfg, "trials");
  const double tol = positive_real(cfg, "tol");
  const bool common = common_coupling(cfg);
  const EllipsoidKind kind = kind_of(cfg);
  const auto& family = cfg.get_text("family");
  require(family == "round" || family == "geometric", "family must be round or geometric");
  const double a = positive_real(cfg, "a");
  const double ratio = positive_real(cfg, "ratio");
  const LimitSequence limit =
      family == "round" ? LimitSequence::constant(a) : LimitSequence::geometric(a, ratio);
  for (auto n : dims) require(k <= n, "k must not exceed any n");

  const std::size_t J = dims.size();
  // the last slot per j is an independent-sample run kept for reference
  const std::size_t slots = trials + (common ? 1 : 0);
  std::vector<double> dp(J * slots);
  parallel_for(J * slots, opt.workers, [&](std::size_t task) {
    const std::size_t j = task / slots;
    const std::size_t t = task % slots;
    const auto axes = limit.prefix(dims[j]);
    const std::uint64_t s = trial_seed(seed_of(r.master_seed, r.suite, j + 1), t, "trial");
    const bool use_common = common && t < trials;
    auto [e, g] = ellipsoid_and_gaussian(kind, axes, m, s, use_common);
    dp[task] = prokhorov_empirical(project(e, k), project(g, k), tol);
  });

  std::vector<double> means;
  for (std::size_t j = 0; j < J; ++j) {
    double sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) sum += dp[j * slots + t];
    means.push_back(sum / static_cast<double>(trials));
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{k}, std::uint64_t{m},
               means.back(), seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("spearman_n_dP", spearman_or_nan(as_doubles(dims), means));
  r.add_aggregate("final_dP", means.back());
  if (common) {
    for (std::size_t j = 0; j < J; ++j) {
      r.add_aggregate("independent_dP_n" + std::to_string(dims[j]), dp[j * slots + trials]);
    }
  }
  r.notes.push_back("dP is the mean over trials of the empirical Prokhorov distance between "
                    "the projected ellipsoid cloud and the projected Gaussian cloud");
  if (common) {
    r.notes.push_back("coupling=common: each ellipsoid cloud is the transport image of its "
                      "Gaussian cloud; independent_dP_* use independent clouds for reference");
  }
  return r;
}

// ---------------------------------------------------------------- sphere-w2

ExperimentReport run_sphere_w2(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t k = positive(cfg, "k");
  const std::size_t m = positive(cfg, "m");
  const double a = positive_real(cfg, "a");
  const double ratio = positive_real(cfg, "ratio");
  require(ratio < 1.0, "ratio must be below 1");
  const double margin = cfg.get_real("margin");
  require(margin >= 0.0, "margin must be nonnegative");
  require(m <= kAssignmentGuard, "m exceeds the assignment solver limit");
  const bool common = common_coupling(cfg);
  const LimitSequence limit = LimitSequence::geometric(a, ratio);
  const double bound = std::sqrt(2.0) / std::exp(1.0) * geometric_tail_sq(a, ratio, k);

  const std::size_t J = dims.size();
  std::vector<double> w2(J);
  parallel_for(J, opt.workers, [&](std::size_t j) {
    const auto axes = limit.prefix(dims[j]);
    auto [e, g] = ellipsoid_and_gaussian(EllipsoidKind::Surface, axes, m,
                                         seed_of(r.master_seed, r.suite, j + 1), common);
    const double w = wasserstein_assignment(e, g, 2.0);
    w2[j] = w * w;
  });
  bool within = true;
  for (std::size_t j = 0; j < J; ++j) {
    within = within && w2[j] <= bound + margin;
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{k}, std::uint64_t{m},
               w2[j], bound, bound + margin, seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("max_w2_sq", *std::max_element(w2.begin(), w2.end()));
  r.add_aggregate("within_bound", flag(within));
  r.notes.push_back("w2_sq is the exact squared W2 between the two empirical clouds; the "
                    "bound is asymptotic, so the margin absorbs finite-n and sampling error");
  return r;
}

// ---------------------------------------------------------------- solid-prokhorov

ExperimentReport run_solid_prokhorov(const Config& cfg, const RunOptions& opt,
                                     ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t m = positive(cfg, "m");
  const double tol = positive_real(cfg, "tol");
  const double a = positive_real(cfg, "a");
  const double ratio = positive_real(cfg, "ratio");
  const bool common = common_coupling(cfg);
  const LimitSequence limit = LimitSequence::geometric(a, ratio);

  const std::size_t J = dims.size();
  std::vector<std::array<double, 3>> dp(J);
  parallel_for(J, opt.workers, [&](std::size_t j) {
    const auto axes = limit.prefix(dims[j]);
    auto [e, g] = ellipsoid_and_gaussian(EllipsoidKind::Solid, axes, m,
                                         seed_of(r.master_seed, r.suite, j + 1), common);
    dp[j] = {prokhorov_empirical(e, g, tol),
             prokhorov_empirical(marginal(e, false), marginal(g, false), tol),
             prokhorov_empirical(marginal(e, true), marginal(g, true), tol)};
  });
  std::vector<double> full, coord;
  for (std::size_t j = 0; j < J; ++j) {
    full.push_back(dp[j][0]);
    coord.push_back(dp[j][1]);
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{m}, dp[j][0],
               dp[j][1], dp[j][2], seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("spearman_n_dP_full", spearman_or_nan(as_doubles(dims), full));
  r.add_aggregate("spearman_n_dP_coord1", spearman_or_nan(as_doubles(dims), coord));
  r.notes.push_back("dP_coord1 and dP_norm are Prokhorov distances of 1-Lipschitz images and "
                    "lower-bound dP_full up to sampling error");
  return r;
}

// ---------------------------------------------------------------- region-mass

constexpr std::size_t kChunk = 1000;

std::vector<double> chunked_fractions(
    const std::function<PointCloud(std::size_t, std::uint64_t)>& sampler,
    const std::vector<RegionSpec>& regions, std::size_t m, std::uint64_t seed) {
  std::vector<std::size_t> hits(regions.size(), 0);
  for (std::size_t start = 0, c = 0; start < m; start += kChunk, ++c) {
    const std::size_t len = std::min(kChunk, m - start);
    const PointCloud chunk = sampler(len, derive_seed(seed, "chunk", {c}));
    for (std::size_t q = 0; q < regions.size(); ++q) {
      const auto mask = region_mask(chunk, regions[q]);
      hits[q] += static_cast<std::size_t>(std::count(mask.mask.begin(), mask.mask.end(), true));
    }
  }
  std::vector<double> out;
  for (auto h : hits) out.push_back(static_cast<double>(h) / static_cast<double>(m));
  return out;
}

ExperimentReport run_region_mass(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto& head = cfg.get_real_list("head");
  const auto dims = dims_of(cfg, std::max<std::size_t>(2, head.size()));
  const std::size_t m = positive(cfg, "m");
  const double a = positive_real(cfg, "a");
  const std::size_t N = positive(cfg, "N");
  const double eps = positive_real(cfg, "eps");
  const double theta = positive_real(cfg, "theta");
  for (double h : head) require(h > 0.0, "head entries must be positive");
  for (auto n : dims) require(N <= n, "N must not exceed n");
  auto axes_for = [&](std::size_t n) {
    std::vector<double> ax(n, a);
    std::copy(head.begin(), head.end(), ax.begin());
    return ax;
  };

  const std::size_t J = dims.size();
  // per j: Gaussian (D and D n F on the same sample), surface, solid
  std::vector<double> frac(J * 4);
  parallel_for(J * 3, opt.workers, [&](std::size_t task) {
    const std::size_t j = task / 3;
    const std::size_t which = task % 3;
    const auto axes = axes_for(dims[j]);
    const RegionD d{N, eps};
    const RegionF f{theta, axes};
    const std::uint64_t s = trial_seed(seed_of(r.master_seed, r.suite, j + 1), which, "measure");
    if (which == 0) {
      const GaussianSpec spec(axes);
      const auto fr = chunked_fractions(
          [&](std::size_t len, std::uint64_t cs) { return sample_gaussian(spec, len, cs); },
          {RegionSpec{d}, RegionSpec{RegionDF{d, f}}}, m, s);
      frac[j * 4] = fr[0];
      frac[j * 4 + 1] = fr[1];
    } else {
      const auto spec = EllipsoidSpec::from_normalized(
          which == 1 ? EllipsoidKind::Surface : EllipsoidKind::Solid, axes);
      frac[j * 4 + which + 1] = chunked_fractions(
          [&](std::size_t len, std::uint64_t cs) { return sample_ellipsoid(spec, len, cs); },
          {RegionSpec{d}}, m, s)[0];
    }
  });
  for (std::size_t j = 0; j < J; ++j) {
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{m}, frac[j * 4],
               frac[j * 4 + 1], frac[j * 4 + 2], frac[j * 4 + 3],
               seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("final_gauss_DF", frac[(J - 1) * 4 + 1]);
  r.add_aggregate("final_surface_D", frac[(J - 1) * 4 + 2]);
  r.notes.push_back("D: |x_i|/|x| < eps for i < N; F: |L^-1 x| >= theta sqrt(n), L the "
                    "Gaussian semiaxes");
  return r;
}

// ---------------------------------------------------------------- lip-check

struct LipResult {
  std::size_t points = 0;
  double max_e = 0.0;
  double max_s = 0.0;
  std::uint64_t degenerate = 0;
};

ExperimentReport run_lip_check(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t points = positive(cfg, "points");
  const double a = positive_real(cfg, "a");
  const std::size_t N = positive(cfg, "N");
  const double eps = positive_real(cfg, "eps");
  const double theta = positive_real(cfg, "theta");
  require(theta < 1.0, "theta must be below 1");
  const double slack = cfg.get_real("slack");
  require(slack >= 0.0, "slack must be nonnegative");
  for (auto n : dims) require(N <= n, "N must not exceed n");
  const double bound = (1.0 + slack) / (theta * theta);

  const std::size_t J = dims.size();
  std::vector<LipResult> res(J);
  for (std::size_t j = 0; j < J; ++j) {
    const std::size_t n = dims[j];
    const std::vector<double> axes(n, a);
    const RegionSpec region = RegionDF{RegionD{N, eps}, RegionF{theta, axes}};
    const GaussianSpec spec(axes);
    const std::uint64_t s = seed_of(r.master_seed, r.suite, j + 1);
    // probe points in chunk order so the selection does not depend on workers
    std::vector<double> probe;
    for (std::size_t c = 0; probe.size() < points * n; ++c) {
      require(c < 100000, "region D and F is too thin to collect probe points");
      const PointCloud chunk = sample_gaussian(spec, kChunk, derive_seed(s, "chunk", {c}));
      const auto mask = region_mask(chunk, region);
      for (std::size_t i = 0; i < chunk.size() && probe.size() < points * n; ++i) {
        if (mask.mask[i]) probe.insert(probe.end(), chunk.point(i).begin(), chunk.point(i).end());
      }
    }
    const PointCloud cloud(n, std::move(probe));
    std::vector<double> oe(points), os(points);
    std::vector<char> degenerate(points, 0);
    const TransportMapSpec phi_e{TransportKind::PhiE, axes, theta};
    const TransportMapSpec phi_s{TransportKind::PhiS, axes, theta};
    parallel_for(points, opt.workers, [&](std::size_t i) {
      const auto e = opnorm_at(phi_e, cloud.point(i));
      const auto sres = opnorm_at(phi_s, cloud.point(i));
      oe[i] = e.value;
      os[i] = sres.value;
      degenerate[i] = static_cast<char>(e.degenerate || sres.degenerate);
    });
    res[j].points = points;
    res[j].max_e = *std::max_element(oe.begin(), oe.end());
    res[j].max_s = *std::max_element(os.begin(), os.end());
    res[j].degenerate = static_cast<std::uint64_t>(std::count(degenerate.begin(), degenerate.end(), 1));
  }
  auto fitted = [&](double op) {
    const double v = op * theta;
    return std::max((v * v - 1.0) / (static_cast<double>(N) * eps), 0.0);
  };
  bool within = true;
  for (std::size_t j = 0; j < J; ++j) {
    within = within && res[j].max_e <= bound && res[j].max_s <= bound;
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{res[j].points},
               res[j].max_e, res[j].max_s, bound, fitted(res[j].max_e), fitted(res[j].max_s),
               res[j].degenerate, seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("within_bound", flag(within));
  r.notes.push_back("fitted_C is the smallest C with max opnorm <= sqrt(1 + C N eps)/theta "
                    "over the probe points; it is a diagnostic, not a certified constant");
  return r;
}

// ---------------------------------------------------------------- dissipation

ExperimentReport run_dissipation(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t m = positive(cfg, "m");
  const double growth = positive_real(cfg, "growth");
  const double a = positive_real(cfg, "a");
  const double kappa = cfg.get_real("kappa");
  require(kappa > 0.0 && kappa < 1.0, "kappa must lie in (0,1)");
  const std::size_t directions = static_cast<std::size_t>(cfg.get_uint("directions"));
  const EllipsoidKind kind = kind_of(cfg);

  const std::size_t J = dims.size();
  std::vector<double> a1(J);
  std::vector<PointCloud> clouds;
  clouds.reserve(J);
  for (std::size_t j = 0; j < J; ++j) clouds.emplace_back(1, std::vector<double>{0.0});
  parallel_for(J, opt.workers, [&](std::size_t j) {
    std::vector<double> axes(dims[j], a);
    a1[j] = std::pow(growth, static_cast<double>(j + 1));
    axes[0] = a1[j];
    clouds[j] = sample_ellipsoid(EllipsoidSpec::from_normalized(kind, axes), m,
                                 seed_of(r.master_seed, r.suite, j + 1));
  });
  const auto series =
      dissipation_series(clouds, kappa, directions, derive_seed(r.master_seed, "witnesses"));
  for (std::size_t j = 0; j < J; ++j) {
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, a1[j], std::uint64_t{m},
               series.estimates[j].lower_bound, series.estimates[j].witness,
               seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("slope", series.slope);
  r.add_aggregate("ratio_final_initial", series.ratio);
  r.add_aggregate("strictly_increasing", flag(series.strictly_increasing));
  r.notes.push_back("obs_diam_lower is a certified lower bound on the observable diameter "
                    "from coordinate, random-direction and anchor-distance witnesses");
  return r;
}

// ---------------------------------------------------------------- dirac-w2

ExperimentReport run_dirac_w2(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t m = positive(cfg, "m");
  const double c = positive_real(cfg, "c");
  const std::size_t J = dims.size();
  std::vector<double> w2(J);
  parallel_for(J, opt.workers, [&](std::size_t j) {
    const std::size_t n = dims[j];
    const std::vector<double> b(n, c / std::sqrt(static_cast<double>(n)));
    const auto cloud = sample_ellipsoid(EllipsoidSpec::from_normalized(EllipsoidKind::Surface, b),
                                        m, seed_of(r.master_seed, r.suite, j + 1));
    const std::vector<double> origin(n, 0.0);
    const double w = wasserstein_to_point(cloud, origin, 2.0);
    w2[j] = w * w;
  });
  for (std::size_t j = 0; j < J; ++j) {
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{m}, w2[j], c * c,
               seed_of(r.master_seed, r.suite, j + 1)});
  }
  r.add_aggregate("final_w2_sq", w2.back());
  r.add_aggregate("limit_sum", c * c);
  return r;
}

// ---------------------------------------------------------------- box-trend

ExperimentReport run_box_trend(const Config& cfg, const RunOptions& opt, ExperimentReport r) {
  const auto dims = dims_of(cfg, 2);
  const std::size_t m = positive(cfg, "m");
  require(m <= kAssignmentGuard, "m exceeds the assignment solver limit");
  const double a = positive_real(cfg, "a");
  const double ratio = positive_real(cfg, "ratio");
  const double trim = cfg.get_real("trim");
  require(trim >= 0.0 && trim < 0.5, "trim must lie in [0, 0.5)");
  const bool common = common_coupling(cfg);
  const auto family = SequenceFamily::custom_limit(LimitSequence::geometric(a, ratio),
                                                   cfg.get_real("c"), cfg.get_real("power"), dims);
  const std::size_t J = dims.size();
  std::vector<BoxBound> boxes(J);
  std::vector<double> dev(J);
  parallel_for(J, opt.workers, [&](std::size_t j) {
    const auto row = family.row(j + 1);
    const auto lim = family.limit().prefix(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) dev[j] += (row[i] - lim[i]) * (row[i] - lim[i]);
    const std::uint64_t s = seed_of(r.master_seed, r.suite, j + 1);
    const auto y = sample_gaussian(GaussianSpec(lim), m, trial_seed(s, 0, "gaussian"));
    const auto x =
        common ? apply_transport({TransportKind::PhiE, row, 0.9},
                                 sample_gaussian(GaussianSpec(row), m, trial_seed(s, 0, "gaussian")))
               : sample_ellipsoid(EllipsoidSpec::from_normalized(EllipsoidKind::Solid, row), m,
                                  trial_seed(s, 0, "ellipsoid"));
    boxes[j] = box_upper_bound(x, y, trim);
  });
  std::vector<double> bounds;
  for (std::size_t j = 0; j < J; ++j) {
    bounds.push_back(boxes[j].bound);
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, std::uint64_t{m}, dev[j],
               boxes[j].bound, boxes[j].distortion, boxes[j].removed_fraction,
               seed_of(r.master_seed, r.suite, j + 1)});
  }
  std::vector<double> idx(J);
  std::iota(idx.begin(), idx.end(), 1.0);
  r.add_aggregate("spearman_j_bound", spearman_or_nan(idx, bounds));
  r.notes.push_back("bound is an upper bound on the box distance between the two empirical "
                    "spaces; a non-decreasing trend cannot certify box non-convergence, so "
                    "only the convergent direction is probed");
  return r;
}

// ---------------------------------------------------------------- criteria

ExperimentReport run_criteria(const Config& cfg, const RunOptions&, ExperimentReport r) {
  const auto& gen = cfg.get_text("generator");
  const auto dims = dims_of(cfg, 1);
  const std::size_t horizon = positive(cfg, "horizon");
  const double a = cfg.get_real("a");
  const double ratio = cfg.get_real("ratio");
  auto build = [&]() -> SequenceFamily {
    try {
      if (gen == "round") return SequenceFamily::round(a, dims);
      if (gen == "geometric") return SequenceFamily::geometric(ratio, a, dims);
      if (gen == "custom") {
        return SequenceFamily::custom_limit(LimitSequence::geometric(a, ratio), cfg.get_real("c"),
                                            cfg.get_real("power"), dims);
      }
      if (gen == "explicit") {
        const auto& flat = cfg.get_real_list("table");
        const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
        require(flat.size() == total, "table length must equal the sum of n_grid");
        std::vector<std::vector<double>> rows;
        std::size_t at = 0;
        for (auto n : dims) {
          rows.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(at),
                            flat.begin() + static_cast<std::ptrdiff_t>(at + n));
          at += n;
        }
        return SequenceFamily::explicit_table(std::move(rows), cfg.get_real_list("limit"));
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    throw ConfigError("generator must be round, geometric, custom or explicit");
  };
  const SequenceFamily family = build();
  const std::vector<double> limit =
      gen == "explicit" ? family.limit().values : family.limit().prefix(horizon);
  const auto cond = check_conditions(family, cfg.get_real("cauchy_tol"));
  const auto crit = check_criteria(family, limit);
  for (std::size_t j = 0; j < family.count(); ++j) {
    r.add_row({std::uint64_t{j + 1}, std::uint64_t{dims[j]}, crit.deviation[j], crit.tail[j],
               crit.gaussian_w2_sq[j]});
  }
  for (std::size_t c = 0; c < crit.checkpoints.size(); ++c) {
    r.add_aggregate("l2_partial_sum_" + std::to_string(crit.checkpoints[c]),
                    crit.l2_partial_sums[c]);
  }
  r.add_aggregate("dims_grow", flag(cond.dims_grow));
  r.add_aggregate("bounded", flag(cond.bounded));
  r.add_aggregate("dims_monotone", flag(cond.dims_monotone));
  r.add_aggregate("rows_monotone", flag(cond.rows_monotone));
  r.add_aggregate("cauchy", flag(cond.cauchy));
  r.add_aggregate("cauchy_step", cond.cauchy_step);
  for (const auto& h : crit.hints) {
    r.add_aggregate("hint_" + h.name, flag(h.flagged));
    r.notes.push_back(h.name + ": " + h.statement);
  }
  r.notes.push_back("hints are finite-horizon readings, not proofs of convergence");
  return r;
}

using Runner = ExperimentReport (*)(const Config&, const RunOptions&, ExperimentReport);

Runner runner_for(const std::string& name) {
  if (name == "mb-law") return run_mb_law;
  if (name == "sphere-w2") return run_sphere_w2;
  if (name == "solid-prokhorov") return run_solid_prokhorov;
  if (name == "region-mass") return run_region_mass;
  if (name == "lip-check") return run_lip_check;
  if (name == "dissipation") return run_dissipation;
  if (name == "dirac-w2") return run_dirac_w2;
  if (name == "box-trend") return run_box_trend;
  if (name == "criteria") return run_criteria;
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = build_catalog();
  return catalog;
}

const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : suite_catalog()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown suite '" + name + "'");
}

ExperimentReport run_suite(const std::string& name, const Config& config,
                           const RunOptions& options) {
  const SuiteInfo& info = find_suite(name);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.suite = info.name;
  r.config = config.echo();
  r.master_seed = config.get_uint("seed");
  r.columns = info.columns;
  r = runner_for(name)(config, options, std::move(r));
  if (options.timing) {
    r.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace mmlab
