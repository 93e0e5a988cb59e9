// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_MAXFLOW_HPP
#define MMLAB_MAXFLOW_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

namespace mmlab {

/// Dinic's blocking-flow max-flow. Capacity may be integral or floating; for
/// floating capacities residuals below `zero` are treated as saturated.
template <typename Cap>
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes, Cap zero = Cap{})
      : adjacency_(nodes), level_(nodes), cursor_(nodes), zero_(zero) {}

  void reserve_edges(std::size_t count) { edges_.reserve(2 * count); }

  void add_edge(std::size_t from, std::size_t to, Cap capacity) {
    adjacency_[from].push_back(edges_.size());
    edges_.push_back({to, capacity});
    adjacency_[to].push_back(edges_.size());
    edges_.push_back({from, Cap{}});
  }

  Cap max_flow(std::size_t source, std::size_t sink) {
    Cap total{};
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (true) {
        const Cap pushed = augment(source, sink, std::numeric_limits<Cap>::max());
        if (!(pushed > zero_)) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    Cap residual;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{source};
    level_[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      for (std::size_t id : adjacency_[v]) {
        const Edge& e = edges_[id];
        if (e.residual > zero_ && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // Iterative DFS along the level graph; returns the bottleneck pushed.
  Cap augment(std::size_t source, std::size_t sink, Cap limit) {
    path_.clear();
    std::size_t v = source;
    while (true) {
      if (v == sink) {
        Cap flow = limit;
        for (std::size_t id : path_) flow = std::min(flow, edges_[id].residual);
        for (std::size_t id : path_) {
          edges_[id].residual -= flow;
          edges_[id ^ 1].residual += flow;
        }
        return flow;
      }
      bool advanced = false;
      auto& cur = cursor_[v];
      for (; cur < adjacency_[v].size(); ++cur) {
        const std::size_t id = adjacency_[v][cur];
        const Edge& e = edges_[id];
        if (e.residual > zero_ && level_[e.to] == level_[v] + 1) {
          path_.push_back(id);
          v = e.to;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        if (v == source) return Cap{};
        level_[v] = -1;  // dead end
        const std::size_t id = path_.back();
        path_.pop_back();
        v = edges_[id ^ 1].to;
        ++cursor_[v];
      }
    }
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> path_;
  Cap zero_;
};

}  // namespace mmlab

#endif  // MMLAB_MAXFLOW_HPP
