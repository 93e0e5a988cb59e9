// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_ASSIGNMENT_HPP
#define MMLAB_ASSIGNMENT_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace mmlab {

struct Assignment {
  std::vector<std::size_t> row_to_col;
  double total_cost = 0.0;
};

/// Exact minimum-cost perfect matching on a dense square cost matrix (row-major,
/// size n*n) by shortest augmenting paths with potentials, O(n^3).
Assignment solve_assignment(std::span<const double> cost, std::size_t n);

}  // namespace mmlab

#endif  // MMLAB_ASSIGNMENT_HPP
