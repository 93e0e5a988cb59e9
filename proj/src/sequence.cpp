// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmlab/stats.hpp"

namespace mmlab {

LimitSequence LimitSequence::constant(double a) {
  LimitSequence s;
  s.kind = Kind::Constant;
  s.scale = a;
  return s;
}

LimitSequence LimitSequence::geometric(double scale, double ratio) {
  LimitSequence s;
  s.kind = Kind::Geometric;
  s.scale = scale;
  s.ratio = ratio;
  return s;
}

LimitSequence LimitSequence::list(std::vector<double> values) {
  LimitSequence s;
  s.kind = Kind::List;
  s.values = std::move(values);
  return s;
}

double LimitSequence::operator()(std::size_t i) const {
  if (i == 0) throw std::invalid_argument("LimitSequence: index is 1-based");
  switch (kind) {
    case Kind::Constant:
      return scale;
    case Kind::Geometric:
      return scale * std::pow(ratio, static_cast<double>(i - 1));
    case Kind::List:
      return i <= values.size() ? values[i - 1] : 0.0;
  }
  return 0.0;
}

std::vector<double> LimitSequence::prefix(std::size_t len) const {
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = (*this)(i + 1);
  return out;
}

SequenceFamily::SequenceFamily(Generator g, std::vector<std::size_t> dims, LimitSequence limit)
    : generator_(g), dims_(std::move(dims)), limit_(std::move(limit)) {}

SequenceFamily SequenceFamily::explicit_table(std::vector<std::vector<double>> rows,
                                              std::vector<double> limit) {
  std::vector<std::size_t> dims;
  for (const auto& r : rows) dims.push_back(r.size());
  SequenceFamily f(Generator::Explicit, std::move(dims), LimitSequence::list(std::move(limit)));
  f.table_ = std::move(rows);
  f.validate();
  return f;
}

SequenceFamily SequenceFamily::round(double a, std::vector<std::size_t> dims) {
  SequenceFamily f(Generator::Round, std::move(dims), LimitSequence::constant(a));
  f.validate();
  return f;
}

SequenceFamily SequenceFamily::geometric(double ratio, double scale,
                                         std::vector<std::size_t> dims) {
  SequenceFamily f(Generator::Geometric, std::move(dims), LimitSequence::geometric(scale, ratio));
  f.validate();
  return f;
}

SequenceFamily SequenceFamily::custom_limit(LimitSequence limit, double c, double power,
                                            std::vector<std::size_t> dims) {
  if (!std::isfinite(c) || !std::isfinite(power)) {
    throw std::invalid_argument("SequenceFamily: perturbation must be finite");
  }
  SequenceFamily f(Generator::CustomLimit, std::move(dims), std::move(limit));
  f.c_ = c;
  f.power_ = power;
  f.validate();
  return f;
}

std::size_t SequenceFamily::dim(std::size_t j) const {
  if (j == 0 || j > dims_.size()) throw std::out_of_range("SequenceFamily: j out of range");
  return dims_[j - 1];
}

std::vector<double> SequenceFamily::row(std::size_t j) const {
  const std::size_t n = dim(j);
  if (generator_ == Generator::Explicit) return table_[j - 1];
  std::vector<double> out = limit_.prefix(n);
  if (generator_ == Generator::CustomLimit) {
    const double shift = c_ * std::pow(static_cast<double>(j), -power_);
    for (double& v : out) v += shift;
  }
  return out;
}

void SequenceFamily::validate() const {
  if (dims_.empty()) throw std::invalid_argument("SequenceFamily: no indices");
  for (std::size_t j = 1; j <= dims_.size(); ++j) {
    if (dims_[j - 1] == 0) throw std::invalid_argument("SequenceFamily: dims must be positive");
    for (double v : row(j)) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("SequenceFamily: entries must be positive and finite");
      }
    }
  }
}

ConditionReport check_conditions(const SequenceFamily& family, double cauchy_tol) {
  ConditionReport r;
  r.cauchy_tol = cauchy_tol;
  const auto& dims = family.dims();
  const std::size_t J = family.count();
  r.dims_grow = dims.back() > dims.front();
  r.dims_monotone = std::is_sorted(dims.begin(), dims.end());
  r.rows_monotone = true;
  for (std::size_t j = 1; j <= J; ++j) {
    const auto row = family.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.sup = std::max(r.sup, row[i]);
      if (i > 0 && row[i] > row[i - 1]) r.rows_monotone = false;
    }
  }
  r.bounded = std::isfinite(r.sup);
  if (J >= 2) {
    const auto last = family.row(J);
    const auto prev = family.row(J - 1);
    const std::size_t common = std::min(last.size(), prev.size());
    for (std::size_t i = 0; i < common; ++i) {
      r.cauchy_step = std::max(r.cauchy_step, std::abs(last[i] - prev[i]));
    }
    r.cauchy = r.cauchy_step <= cauchy_tol;
  }
  return r;
}

namespace {

double sq(double v) { return v * v; }

// Successive doubling increments of the partial sums shrink geometrically.
bool looks_summable(const std::vector<double>& sums) {
  if (sums.size() < 4) return false;
  std::vector<double> inc;
  for (std::size_t k = 1; k < sums.size(); ++k) inc.push_back(sums[k] - sums[k - 1]);
  const double last = inc.back();
  if (last <= 1e-15 * std::max(1.0, sums.back())) return true;
  const double r1 = inc[inc.size() - 1] / inc[inc.size() - 2];
  const double r2 = inc[inc.size() - 2] / inc[inc.size() - 3];
  return r1 <= 0.75 && r2 <= 0.75;
}

bool looks_null(const std::vector<double>& limit) {
  const std::size_t H = limit.size();
  if (H < 4) return false;
  double recent = 0.0, earlier = 0.0;
  for (std::size_t i = H / 2; i < H; ++i) recent = std::max(recent, std::abs(limit[i]));
  for (std::size_t i = H / 4; i < H / 2; ++i) earlier = std::max(earlier, std::abs(limit[i]));
  return recent <= 1e-12 || recent <= 0.75 * earlier;
}

bool trends_to_zero(const std::vector<double>& series) {
  if (series.empty()) return false;
  const double peak = *std::max_element(series.begin(), series.end());
  if (series.back() <= 1e-12 * std::max(1.0, peak)) return true;
  if (series.size() < 3) return false;
  std::vector<double> idx(series.size());
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = static_cast<double>(j + 1);
  const double rho = spearman(idx, series);
  return rho <= -0.8 && series.back() <= 0.5 * peak;
}

}  // namespace

CriteriaReport check_criteria(const SequenceFamily& family, const std::vector<double>& limit) {
  CriteriaReport r;
  const std::size_t J = family.count();
  const std::size_t max_dim = *std::max_element(family.dims().begin(), family.dims().end());
  const std::size_t H = std::max(max_dim, limit.size());
  auto lim = [&](std::size_t i) { return i < limit.size() ? limit[i] : 0.0; };

  std::vector<double> prefix(H + 1, 0.0);
  for (std::size_t i = 0; i < H; ++i) prefix[i + 1] = prefix[i] + sq(lim(i));
  for (std::size_t c = 1;; c *= 2) {
    const std::size_t at = std::min(c, H);
    r.checkpoints.push_back(at);
    r.l2_partial_sums.push_back(prefix[at]);
    if (at == H) break;
  }

  for (std::size_t j = 1; j <= J; ++j) {
    const auto row = family.row(j);
    double dev = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) dev += sq(row[i] - lim(i));
    const double tail = prefix[H] - prefix[std::min(row.size(), H)];
    r.deviation.push_back(dev);
    r.tail.push_back(tail);
    r.gaussian_w2_sq.push_back(dev + tail);
  }

  const bool summable = looks_summable(r.l2_partial_sums);
  const bool null = looks_null(std::vector<double>(limit.begin(), limit.end()));
  const bool converging = trends_to_zero(r.deviation);
  r.hints.push_back({"box-candidate", summable && converging,
                     "box convergence to the limit Gaussian space holds iff the limit is "
                     "square-summable and sum_{i<=n(j)} (a_ij - a_i)^2 -> 0; this hint reads "
                     "finite partial sums and cannot certify either limit"});
  r.hints.push_back({"concentration-candidate", summable,
                     "concentration to the limit Gaussian space holds iff the limit sequence "
                     "is an l2-sequence; judged from doubling increments of the partial sums"});
  r.hints.push_back({"asymptotic-concentration-candidate", null,
                     "asymptotic concentration holds iff the limit sequence converges to zero; "
                     "judged from block maxima of the supplied limit"});
  return r;
}

}  // namespace mmlab
