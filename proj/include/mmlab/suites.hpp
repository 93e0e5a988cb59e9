// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MMLAB_SUITES_HPP
#define MMLAB_SUITES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mmlab/config.hpp"
#include "mmlab/report.hpp"

namespace mmlab {

struct SuiteInfo {
  std::string name;
  std::string anchor;  ///< the statement the suite probes
  std::vector<std::string> columns;
  Schema schema;
};

const std::vector<SuiteInfo>& suite_catalog();
/// Throws ConfigError for an unknown name.
const SuiteInfo& find_suite(const std::string& name);

struct RunOptions {
  std::size_t workers = 1;
  bool timing = false;  ///< record wall clock in the report
};

/// Runs a suite. Semantic config problems raise ConfigError.
ExperimentReport run_suite(const std::string& name, const Config& config,
                           const RunOptions& options = {});

}  // namespace mmlab

#endif  // MMLAB_SUITES_HPP
