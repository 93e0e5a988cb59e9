// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmlab/special.hpp"

namespace mmlab {

namespace {

// log(e^a + e^b)
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

RadialProfile::RadialProfile(std::size_t n)
    : n_(n), saturation_(std::sqrt(static_cast<double>(n) - 1.0)) {
  if (n < 2) throw std::invalid_argument("RadialProfile: need n >= 2");
}

double RadialProfile::operator()(double r) const {
  if (!std::isfinite(r)) throw std::invalid_argument("radial_R: non-finite radius");
  if (r < 0.0) throw std::invalid_argument("radial_R: negative radius");
  if (r == 0.0) return 0.0;
  const double n = static_cast<double>(n_);
  const double log_p = log_reg_lower_gamma(0.5 * n, 0.5 * r * r);
  return std::min(saturation_, saturation_ * std::exp(log_p / n));
}

double radial_R(const RadialProfile& profile, double r) { return profile(r); }

double annulus_profile(double theta, std::size_t n, double r) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("annulus_profile: theta must lie in (0,1)");
  }
  if (n < 2) throw std::invalid_argument("annulus_profile: need n >= 2");
  if (!std::isfinite(r)) throw std::invalid_argument("annulus_profile: non-finite radius");
  const double nd = static_cast<double>(n);
  const double outer = std::sqrt(nd - 1.0);
  const double lo = theta * outer;
  const double hi = outer / theta;
  // Relative slack so that the clamped endpoints themselves are accepted.
  const double slack = 1e-12 * hi;
  if (r < lo - slack || r > hi + slack) {
    throw std::invalid_argument("annulus_profile: radius outside the annulus");
  }
  r = std::clamp(r, lo, hi);

  const double s = 0.5 * nd;
  const double g_lo = reg_lower_gamma(s, 0.5 * lo * lo);
  const double g_hi = reg_lower_gamma(s, 0.5 * hi * hi);
  const double g_r = reg_lower_gamma(s, 0.5 * r * r);
  const double span = g_hi - g_lo;
  const double c = span > 0.0 ? std::clamp((g_r - g_lo) / span, 0.0, 1.0) : 0.0;

  // (R/outer)^n = theta^n + (1 - theta^n) c, evaluated in logs.
  const double log_theta_n = nd * std::log(theta);
  const double log_rest = c > 0.0 ? std::log(-std::expm1(log_theta_n)) + std::log(c)
                                  : -std::numeric_limits<double>::infinity();
  const double ratio = std::exp(log_add(log_theta_n, log_rest) / nd);
  return std::clamp(outer * ratio, lo, outer);
}

TransportMap::TransportMap(TransportMapSpec spec)
    : spec_(std::move(spec)), profile_(std::max<std::size_t>(2, spec_.semiaxes.size())) {
  if (spec_.semiaxes.size() < 2) throw std::invalid_argument("TransportMap: need n >= 2");
  for (double a : spec_.semiaxes) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("TransportMap: semiaxes must be positive");
    }
  }
  if (spec_.kind == TransportKind::PsiAnnulus && !(spec_.theta > 0.0 && spec_.theta < 1.0)) {
    throw std::invalid_argument("TransportMap: theta must lie in (0,1)");
  }
}

double TransportMap::gauge(std::span<const double> x) const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] / spec_.semiaxes[i];
    s += u * u;
  }
  return std::sqrt(s);
}

void TransportMap::apply(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = dim();
  if (x.size() != n || out.size() != n) {
    throw std::invalid_argument("TransportMap: dimension mismatch");
  }
  if (spec_.kind == TransportKind::Linear) {
    for (std::size_t i = 0; i < n; ++i) out[i] = spec_.semiaxes[i] * x[i];
    return;
  }
  const double r = gauge(x);
  double factor = 0.0;
  switch (spec_.kind) {
    case TransportKind::PhiE:
      // continuous extension at the origin
      factor = r == 0.0 ? 0.0 : profile_(r) / r;
      break;
    case TransportKind::PhiS:
      if (r == 0.0) throw std::invalid_argument("PhiS: zero vector has no image");
      factor = profile_.saturation() / r;
      break;
    case TransportKind::PsiAnnulus:
      if (r == 0.0) throw std::invalid_argument("PsiAnnulus: zero vector has no image");
      factor = annulus_profile(spec_.theta, n, r) / r;
      break;
    case TransportKind::Linear:
      break;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = factor * x[i];
}

PointCloud apply_transport(const TransportMapSpec& spec, const PointCloud& cloud) {
  if (spec.semiaxes.size() != cloud.dim()) {
    throw std::invalid_argument("apply_transport: semiaxes length differs from cloud dim");
  }
  const TransportMap map(spec);
  const std::size_t n = cloud.dim();
  std::vector<double> coords(cloud.coords().size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    map.apply(cloud.point(i), std::span<double>(coords.data() + i * n, n));
  }
  return PointCloud(n, std::move(coords), cloud.provenance());
}

OpNormEstimate opnorm_at(const TransportMapSpec& spec, std::span<const double> x,
                         const OpNormOptions& options) {
  const TransportMap map(spec);
  const std::size_t n = map.dim();
  if (x.size() != n) throw std::invalid_argument("opnorm_at: dimension mismatch");
  const double h = options.step > 0.0 ? options.step : 1e-5 * std::max(1.0, norm(x));

  // jac is row-major: jac[i * n + k] = d out_i / d x_k
  std::vector<double> jac(n * n);
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> fp(n), fm(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double orig = xp[k];
    xp[k] = orig + h;
    map.apply(xp, fp);
    xp[k] = orig - h;
    map.apply(xp, fm);
    xp[k] = orig;
    for (std::size_t i = 0; i < n; ++i) jac[i * n + k] = (fp[i] - fm[i]) / (2.0 * h);
  }

  OpNormEstimate est;
  double frob = 0.0;
  for (double v : jac) {
    if (!std::isfinite(v)) {
      est.degenerate = true;
      return est;
    }
    frob += v * v;
  }
  if (frob == 0.0) {
    est.degenerate = true;
    return est;
  }

  // Fixed irregular start vector keeps the probe deterministic and generic.
  std::vector<double> v(n), jv(n), w(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(k) + 0.3);
  double vn = norm(v);
  for (double& c : v) c /= vn;

  double sigma = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += jac[i * n + k] * v[k];
      jv[i] = s;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) w[k] += jac[i * n + k] * jv[i];
    }
    const double wn = norm(w);
    const double next = std::sqrt(wn);  // ||J^T J v||^(1/2) -> sigma_max
    est.iterations = it;
    if (wn == 0.0) {
      est.degenerate = true;
      est.value = 0.0;
      return est;
    }
    for (std::size_t k = 0; k < n; ++k) v[k] = w[k] / wn;
    const bool converged = std::abs(next - sigma) <= options.tolerance * std::max(1.0, next);
    sigma = next;
    if (converged) break;
  }
  // Rayleigh quotient with the final unit vector.
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += jac[i * n + k] * v[k];
    jv[i] = s;
  }
  est.value = std::max(sigma, norm(jv));
  return est;
}

}  // namespace mmlab
