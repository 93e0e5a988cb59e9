// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_CONFIG_HPP
#define MMLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mmlab {

/// Malformed, unknown or ill-typed configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { UInt, Real, Text, UIntList, RealList };

struct KeySpec {
  std::string key;
  ValueType type;
  std::string default_value;
  std::string help;
};

using Schema = std::vector<KeySpec>;
using Value = std::variant<std::uint64_t, double, std::string, std::vector<std::uint64_t>,
                           std::vector<double>>;

/// Typed, schema-checked configuration. Every schema key is present.
class Config {
 public:
  /// Parses `key = value` lines; `#` starts a comment. Lists are comma separated.
  static Config parse(const std::string& text, const Schema& schema);
  static Config defaults(const Schema& schema);
  static Config load(const std::string& path, const Schema& schema);

  /// Replaces one key's value, parsing `raw` with the schema type.
  void set(const std::string& key, const std::string& raw);

  [[nodiscard]] std::uint64_t get_uint(const std::string& key) const;
  [[nodiscard]] double get_real(const std::string& key) const;
  [[nodiscard]] const std::string& get_text(const std::string& key) const;
  [[nodiscard]] const std::vector<std::uint64_t>& get_uint_list(const std::string& key) const;
  [[nodiscard]] const std::vector<double>& get_real_list(const std::string& key) const;

  /// Canonical `key -> value` strings in schema order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;

 private:
  explicit Config(const Schema& schema) : schema_(schema) {}
  [[nodiscard]] const Value& at(const std::string& key) const;
  [[nodiscard]] const KeySpec& spec(const std::string& key) const;

  Schema schema_;
  std::map<std::string, Value> values_;
};

/// Shortest round-trip decimal form.
std::string format_real(double v);

}  // namespace mmlab

#endif  // MMLAB_CONFIG_HPP
