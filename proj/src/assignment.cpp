// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmlab {

Assignment solve_assignment(std::span<const double> cost, std::size_t n) {
  if (n == 0) throw std::invalid_argument("solve_assignment: empty problem");
  if (cost.size() != n * n) throw std::invalid_argument("solve_assignment: cost size");
  for (double c : cost) {
    if (!std::isfinite(c)) throw std::invalid_argument("solve_assignment: non-finite cost");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based; index 0 is the virtual column holding the row being inserted.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t i0 = owner[col0];
      const double* crow = cost.data() + (i0 - 1) * n;
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = crow[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment out;
  out.row_to_col.resize(n);
  for (std::size_t j = 1; j <= n; ++j) out.row_to_col[owner[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) out.total_cost += cost[i * n + out.row_to_col[i]];
  return out;
}

}  // namespace mmlab
