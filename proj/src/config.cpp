// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mmlab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::uint64_t parse_uint(const std::string& s, const std::string& key) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("config key '" + key + "': expected a nonnegative integer, got '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("config key '" + key + "': expected a finite number, got '" + s + "'");
  }
  return v;
}

Value parse_value(const KeySpec& spec, const std::string& raw) {
  switch (spec.type) {
    case ValueType::UInt:
      return parse_uint(raw, spec.key);
    case ValueType::Real:
      return parse_real(raw, spec.key);
    case ValueType::Text:
      if (raw.empty()) throw ConfigError("config key '" + spec.key + "': empty value");
      return raw;
    case ValueType::UIntList: {
      std::vector<std::uint64_t> out;
      for (const auto& s : split_list(raw)) out.push_back(parse_uint(s, spec.key));
      if (out.empty()) throw ConfigError("config key '" + spec.key + "': empty list");
      return out;
    }
    case ValueType::RealList: {
      std::vector<double> out;
      for (const auto& s : split_list(raw)) out.push_back(parse_real(s, spec.key));
      if (out.empty()) throw ConfigError("config key '" + spec.key + "': empty list");
      return out;
    }
  }
  throw ConfigError("config key '" + spec.key + "': unknown type");
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += format_real(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

Config Config::defaults(const Schema& schema) {
  Config c(schema);
  for (const auto& s : schema) c.values_[s.key] = parse_value(s, s.default_value);
  return c;
}

Config Config::parse(const std::string& text, const Schema& schema) {
  Config c = defaults(schema);
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string raw = trim(body.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    c.set(key, raw);
  }
  return c;
}

Config Config::load(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), schema);
}

const KeySpec& Config::spec(const std::string& key) const {
  const auto it = std::find_if(schema_.begin(), schema_.end(),
                               [&](const KeySpec& s) { return s.key == key; });
  if (it == schema_.end()) throw ConfigError("unknown config key '" + key + "'");
  return *it;
}

void Config::set(const std::string& key, const std::string& raw) {
  values_[key] = parse_value(spec(key), raw);
}

const Value& Config::at(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

std::uint64_t Config::get_uint(const std::string& key) const {
  return std::get<std::uint64_t>(at(key));
}
double Config::get_real(const std::string& key) const { return std::get<double>(at(key)); }
const std::string& Config::get_text(const std::string& key) const {
  return std::get<std::string>(at(key));
}
const std::vector<std::uint64_t>& Config::get_uint_list(const std::string& key) const {
  return std::get<std::vector<std::uint64_t>>(at(key));
}
const std::vector<double>& Config::get_real_list(const std::string& key) const {
  return std::get<std::vector<double>>(at(key));
}

std::vector<std::pair<std::string, std::string>> Config::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : schema_) {
    const Value& v = at(s.key);
    std::string text = std::visit(
        [](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::uint64_t>) return std::to_string(x);
          else if constexpr (std::is_same_v<T, double>) return format_real(x);
          else if constexpr (std::is_same_v<T, std::string>) return x;
          else return join(x);
        },
        v);
    out.emplace_back(s.key, std::move(text));
  }
  return out;
}

}  // namespace mmlab
