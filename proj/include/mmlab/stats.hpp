// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_STATS_HPP
#define MMLAB_STATS_HPP

#include <span>
#include <vector>

namespace mmlab {

double mean(std::span<const double> v);

/// Ranks starting at 1; ties share their average rank.
std::vector<double> ranks(std::span<const double> v);

/// Pearson correlation of ranks. NaN when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of y on x.
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace mmlab

#endif  // MMLAB_STATS_HPP
