// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_SEQUENCE_HPP
#define MMLAB_SEQUENCE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mmlab {

/// A limit sequence a_1, a_2, ... (1-based).
struct LimitSequence {
  enum class Kind { Constant, Geometric, List };
  Kind kind = Kind::List;
  double scale = 1.0;           ///< Constant value, or a_1 for Geometric
  double ratio = 1.0;           ///< Geometric only
  std::vector<double> values;   ///< List only; zero beyond its end

  static LimitSequence constant(double a);
  static LimitSequence geometric(double scale, double ratio);
  static LimitSequence list(std::vector<double> values);

  [[nodiscard]] double operator()(std::size_t i) const;
  [[nodiscard]] std::vector<double> prefix(std::size_t len) const;
};

/// Doubly indexed semiaxis family a_{ij}, i <= n(j), j = 1..count.
class SequenceFamily {
 public:
  enum class Generator { Explicit, Round, Geometric, CustomLimit };

  static SequenceFamily explicit_table(std::vector<std::vector<double>> rows,
                                       std::vector<double> limit = {});
  static SequenceFamily round(double a, std::vector<std::size_t> dims);
  static SequenceFamily geometric(double ratio, double scale, std::vector<std::size_t> dims);
  /// a_{ij} = a_i + c * j^{-power}.
  static SequenceFamily custom_limit(LimitSequence limit, double c, double power,
                                     std::vector<std::size_t> dims);

  [[nodiscard]] Generator generator() const noexcept { return generator_; }
  [[nodiscard]] std::size_t count() const noexcept { return dims_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  /// n(j), j 1-based.
  [[nodiscard]] std::size_t dim(std::size_t j) const;
  /// (a_{1j}, ..., a_{n(j)j}), j 1-based.
  [[nodiscard]] std::vector<double> row(std::size_t j) const;
  [[nodiscard]] const LimitSequence& limit() const noexcept { return limit_; }

 private:
  SequenceFamily(Generator g, std::vector<std::size_t> dims, LimitSequence limit);
  void validate() const;

  Generator generator_;
  std::vector<std::size_t> dims_;
  LimitSequence limit_;
  std::vector<std::vector<double>> table_;
  double c_ = 0.0;
  double power_ = 1.0;
};

struct ConditionReport {
  bool dims_grow = false;      ///< n(J) > n(1): finite stand-in for divergence
  bool bounded = false;        ///< sup a_ij finite
  double sup = 0.0;
  bool dims_monotone = false;  ///< n(j) nondecreasing
  bool rows_monotone = false;  ///< a_ij nonincreasing in i for every j
  bool cauchy = false;         ///< |a_{iJ} - a_{i,J-1}| <= tol at the horizon
  double cauchy_step = 0.0;
  double cauchy_tol = 1e-6;
};

ConditionReport check_conditions(const SequenceFamily& family, double cauchy_tol = 1e-6);

struct Hint {
  std::string name;
  bool flagged = false;
  std::string statement;
};

struct CriteriaReport {
  std::vector<std::size_t> checkpoints;   ///< indices of the partial sums
  std::vector<double> l2_partial_sums;    ///< sum_{i<=checkpoint} a_i^2
  std::vector<double> deviation;          ///< per j: sum_{i<=n(j)} (a_ij - a_i)^2
  std::vector<double> tail;               ///< per j: sum_{n(j)<i<=H} a_i^2
  std::vector<double> gaussian_w2_sq;     ///< deviation + tail
  std::vector<Hint> hints;
};

/// `limit` is padded with zeros; its length is the horizon for the limit sums.
CriteriaReport check_criteria(const SequenceFamily& family, const std::vector<double>& limit);

}  // namespace mmlab

#endif  // MMLAB_SEQUENCE_HPP
