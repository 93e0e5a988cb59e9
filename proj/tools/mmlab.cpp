// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

// mmlab <suite> --config <path> [--seed N] [--out <path>] [--format csv|json] [--workers K]
// mmlab list

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mmlab/config.hpp"
#include "mmlab/report.hpp"
#include "mmlab/suites.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void print_catalog() {
  for (const auto& s : mmlab::suite_catalog()) {
    std::cout << s.name << "\n  " << s.anchor << "\n  columns:";
    for (const auto& c : s.columns) std::cout << ' ' << c;
    std::cout << '\n';
  }
}

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw mmlab::ConfigError(std::string(origin) + ": not a seed: '" + text + "'");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric measure space convergence lab"};
  std::string suite;
  std::string config_path;
  std::optional<std::string> seed_arg;
  std::string out_path = "-";
  std::string format = "csv";
  std::size_t workers = 1;
  bool timing = false;
  app.add_option("suite", suite, "suite name, or 'list'")->required();
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--seed", seed_arg, "master seed (overrides MMLAB_SEED and the config)");
  app.add_option("--out", out_path, "output path, '-' for stdout");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "include wall clock in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (suite == "list") {
    print_catalog();
    return 0;
  }

  mmlab::Config config = mmlab::Config::defaults({});
  try {
    const auto& info = mmlab::find_suite(suite);
    config = config_path.empty() ? mmlab::Config::defaults(info.schema)
                                 : mmlab::Config::load(config_path, info.schema);
    if (const char* env = std::getenv("MMLAB_SEED"); env != nullptr && !seed_arg) {
      config.set("seed", std::to_string(parse_seed(env, "MMLAB_SEED")));
    }
    if (seed_arg) config.set("seed", std::to_string(parse_seed(*seed_arg, "--seed")));
  } catch (const mmlab::ConfigError& e) {
    std::cerr << "mmlab: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto report = mmlab::run_suite(suite, config, {workers, timing});
    mmlab::emit_report(report,
                       format == "json" ? mmlab::ReportFormat::Json : mmlab::ReportFormat::Csv,
                       out_path);
  } catch (const mmlab::ConfigError& e) {
    std::cerr << "mmlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "mmlab: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
