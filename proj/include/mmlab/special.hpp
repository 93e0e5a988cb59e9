// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_SPECIAL_HPP
#define MMLAB_SPECIAL_HPP

namespace mmlab {

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
/// Series for x < s + 1, Lentz continued fraction for the complement otherwise,
/// both evaluated in the log domain. Throws std::invalid_argument unless
/// s > 0, x >= 0 and both are finite.
double reg_lower_gamma(double s, double x);

/// log P(s, x); -infinity at x = 0. Accurate where P underflows.
double log_reg_lower_gamma(double s, double x);

/// Q(s, x) = 1 - P(s, x), without cancellation in the upper tail.
double reg_upper_gamma(double s, double x);

}  // namespace mmlab

#endif  // MMLAB_SPECIAL_HPP
