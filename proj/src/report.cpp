// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "mmlab/config.hpp"

namespace mmlab {

using ordered_json = nlohmann::ordered_json;

void ExperimentReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("report row width mismatch");
  rows.push_back(std::move(row));
}

void ExperimentReport::add_aggregate(std::string key, Cell value) {
  aggregates.emplace_back(std::move(key), std::move(value));
}

const Cell& ExperimentReport::aggregate(const std::string& key) const {
  for (const auto& [k, v] : aggregates) {
    if (k == key) return v;
  }
  throw std::out_of_range("report has no aggregate '" + key + "'");
}

std::vector<double> ExperimentReport::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("report has no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  for (const auto& row : rows) {
    if (const auto* u = std::get_if<std::uint64_t>(&row[c])) {
      out.push_back(static_cast<double>(*u));
    } else if (const auto* d = std::get_if<double>(&row[c])) {
      out.push_back(*d);
    } else {
      throw std::invalid_argument("column '" + name + "' is not numeric");
    }
  }
  return out;
}

std::string format_cell(const Cell& cell) {
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  return std::get<std::string>(cell);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

ordered_json cell_json(const Cell& cell) {
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return *u;
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  return std::get<std::string>(cell);
}

Cell json_cell(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw std::runtime_error("report JSON: unsupported cell");
}

}  // namespace

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_field(report.columns[c]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_field(format_cell(row[c]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ExperimentReport& report) {
  ordered_json j;
  j["suite"] = report.suite;
  j["master_seed"] = report.master_seed;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = report.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  ordered_json agg = ordered_json::object();
  for (const auto& [k, v] : report.aggregates) agg[k] = cell_json(v);
  j["aggregates"] = std::move(agg);
  j["notes"] = report.notes;
  if (report.wall_clock_seconds) j["wall_clock_seconds"] = *report.wall_clock_seconds;
  return j.dump(2) + "\n";
}

ExperimentReport parse_json_report(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report JSON: ") + e.what());
  }
  ExperimentReport r;
  try {
    r.suite = j.at("suite").get<std::string>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
      std::vector<Cell> cells;
      for (const auto& c : row) cells.push_back(json_cell(c));
      r.add_row(std::move(cells));
    }
    for (const auto& [k, v] : j.at("aggregates").items()) r.add_aggregate(k, json_cell(v));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report JSON: ") + e.what());
  }
  return r;
}

std::string render(const ExperimentReport& report, ReportFormat format) {
  return format == ReportFormat::Csv ? to_csv(report) : to_json(report);
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  const std::string text = render(report, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed: " + std::strerror(errno));
}

}  // namespace mmlab
