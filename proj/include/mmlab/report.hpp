// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_REPORT_HPP
#define MMLAB_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mmlab {

using Cell = std::variant<std::uint64_t, double, std::string>;

struct ExperimentReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t master_seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  ///< one per j index
  std::vector<std::pair<std::string, Cell>> aggregates;
  std::vector<std::string> notes;
  std::optional<double> wall_clock_seconds;  ///< emitted only when set

  void add_row(std::vector<Cell> row);
  void add_aggregate(std::string key, Cell value);
  /// Looks up an aggregate; throws std::out_of_range if absent.
  [[nodiscard]] const Cell& aggregate(const std::string& key) const;
  /// Column values as doubles; throws on a text column.
  [[nodiscard]] std::vector<double> column(const std::string& name) const;
};

enum class ReportFormat { Csv, Json };

std::string format_cell(const Cell& cell);
std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);
ExperimentReport parse_json_report(const std::string& text);
std::string render(const ExperimentReport& report, ReportFormat format);

/// Writes to `path`, or to stdout when path is empty or "-".
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

}  // namespace mmlab

#endif  // MMLAB_REPORT_HPP
