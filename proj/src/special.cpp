// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmlab {

namespace {

constexpr int kMaxIterations = 1000000;
constexpr double kEps = 1e-17;
constexpr double kTiny = 1e-300;

void check_args(double s, double x) {
  if (!std::isfinite(s) || !std::isfinite(x)) {
    throw std::invalid_argument("incomplete gamma: non-finite argument");
  }
  if (!(s > 0.0)) throw std::invalid_argument("incomplete gamma: s must be positive");
  if (x < 0.0) throw std::invalid_argument("incomplete gamma: x must be nonnegative");
}

// log P(s, x) by the power series; requires x > 0.
double log_series(double s, double x) {
  double term = 1.0;
  double sum = 1.0;
  double denom = s;
  for (int k = 0; k < kMaxIterations; ++k) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (term < sum * kEps) break;
  }
  return s * std::log(x) - x - std::lgamma(s + 1.0) + std::log(sum);
}

// log Q(s, x) by the modified Lentz continued fraction; requires x > 0.
double log_continued_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return -x + s * std::log(x) - std::lgamma(s) + std::log(h);
}

}  // namespace

double log_reg_lower_gamma(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x < s + 1.0) return std::min(0.0, log_series(s, x));
  const double log_q = log_continued_fraction(s, x);
  // log(1 - e^{log_q})
  return log_q < -0.6931471805599453 ? std::log1p(-std::exp(log_q))
                                     : std::log(-std::expm1(log_q));
}

double reg_lower_gamma(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return std::min(1.0, std::exp(log_series(s, x)));
  return std::max(0.0, -std::expm1(log_continued_fraction(s, x)));
}

double reg_upper_gamma(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return std::max(0.0, -std::expm1(log_series(s, x)));
  return std::min(1.0, std::exp(log_continued_fraction(s, x)));
}

}  // namespace mmlab
