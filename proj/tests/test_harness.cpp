// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mmlab/config.hpp"
#include "mmlab/report.hpp"
#include "mmlab/sequence.hpp"
#include "mmlab/stats.hpp"
#include "mmlab/suites.hpp"

using namespace mmlab;

namespace {

// Quick variants of every suite, small enough for a unit test.
const std::map<std::string, std::string>& small_overrides() {
  static const std::map<std::string, std::string> table{
      {"mb-law", "n_grid = 20,40\nm = 300\ntrials = 2\n"},
      {"sphere-w2", "n_grid = 30,60\nm = 120\n"},
      {"solid-prokhorov", "n_grid = 20,40\nm = 200\n"},
      {"region-mass", "n_grid = 50,100\nm = 1500\n"},
      {"lip-check", "n_grid = 40\npoints = 20\n"},
      {"dissipation", "n_grid = 10,20,30\nm = 200\n"},
      {"dirac-w2", "n_grid = 20,50\nm = 300\n"},
      {"box-trend", "n_grid = 5,8\nm = 60\n"},
      {"criteria", "n_grid = 1,2,3,4\nhorizon = 64\n"},
  };
  return table;
}

Config small_config(const std::string& suite) {
  return Config::parse(small_overrides().at(suite), find_suite(suite).schema);
}

std::string as_text(const Cell& c) { return std::get<std::string>(c); }

}  // namespace

TEST_CASE("criteria: constant family has zero deviation") {
  const std::vector<double> limit{0.5, 0.25, 0.125, 0.0625};
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 1; j <= 4; ++j) rows.emplace_back(limit.begin(), limit.begin() + j);
  const auto fam = SequenceFamily::explicit_table(rows, limit);
  const auto rep = check_criteria(fam, limit);
  for (double d : rep.deviation) CHECK(d == 0.0);
  // tail beyond n(j) is the remaining limit mass
  CHECK(rep.tail[0] == doctest::Approx(0.25 * 0.25 + 0.125 * 0.125 + 0.0625 * 0.0625));
  CHECK(rep.tail[3] == 0.0);
}

TEST_CASE("criteria: perturbed geometric family") {
  // a_i = 2^-i, a_ij = a_i + 1/j on i <= n(j) = j, so the deviation is j / j^2
  const std::size_t J = 32;
  const std::size_t H = 256;
  std::vector<double> limit(H);
  for (std::size_t i = 0; i < H; ++i) limit[i] = std::ldexp(1.0, -static_cast<int>(i + 1));
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 1; j <= J; ++j) {
    std::vector<double> row(j);
    for (std::size_t i = 0; i < j; ++i) row[i] = limit[i] + 1.0 / static_cast<double>(j);
    rows.push_back(row);
  }
  const auto fam = SequenceFamily::explicit_table(rows, limit);
  const auto rep = check_criteria(fam, limit);
  REQUIRE(rep.deviation.size() == J);
  for (std::size_t j = 1; j <= J; ++j)
    CHECK(rep.deviation[j - 1] == doctest::Approx(1.0 / static_cast<double>(j)).epsilon(1e-12));
  // sum of 4^-i up to the horizon
  CHECK(rep.l2_partial_sums.back() == doctest::Approx((1.0 - std::pow(0.25, H)) / 3.0));
  for (const auto& h : rep.hints) CHECK(h.flagged);
  CHECK(rep.hints[0].name == "box-candidate");
}

TEST_CASE("criteria: round family is not square summable") {
  std::vector<std::size_t> dims;
  for (std::size_t j = 1; j <= 10; ++j) dims.push_back(j * 10);
  const auto fam = SequenceFamily::round(1.0, dims);
  const auto limit = fam.limit().prefix(1024);
  const auto rep = check_criteria(fam, limit);
  CHECK(rep.l2_partial_sums.back() == 1024.0);
  for (std::size_t c = 0; c < rep.checkpoints.size(); ++c)
    CHECK(rep.l2_partial_sums[c] == static_cast<double>(rep.checkpoints[c]));
  for (const auto& h : rep.hints) CHECK_FALSE(h.flagged);
}

TEST_CASE("conditions on sequence families") {
  SUBCASE("geometric family satisfies all of them") {
    const auto fam = SequenceFamily::geometric(0.5, 1.0, {2, 4, 8});
    const auto c = check_conditions(fam);
    CHECK(c.dims_grow);
    CHECK(c.bounded);
    CHECK(c.sup == 1.0);
    CHECK(c.dims_monotone);
    CHECK(c.rows_monotone);
    CHECK(c.cauchy);
    CHECK(c.cauchy_step == 0.0);
  }
  SUBCASE("slow perturbation fails the Cauchy test") {
    const auto fam = SequenceFamily::custom_limit(LimitSequence::constant(1.0), 1.0, 1.0, {1, 2, 3, 4});
    const auto c = check_conditions(fam, 1e-6);
    CHECK_FALSE(c.cauchy);
    CHECK(c.cauchy_step == doctest::Approx(1.0 / 3.0 - 1.0 / 4.0));
  }
  SUBCASE("shrinking dimensions and rising rows are reported") {
    const auto fam = SequenceFamily::explicit_table({{1.0, 2.0, 0.5}, {1.0, 0.5}});
    const auto c = check_conditions(fam);
    CHECK_FALSE(c.dims_grow);
    CHECK_FALSE(c.dims_monotone);
    CHECK_FALSE(c.rows_monotone);
    CHECK(c.sup == 2.0);
  }
  SUBCASE("invalid entries are rejected") {
    CHECK_THROWS_AS(SequenceFamily::explicit_table({{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SequenceFamily::explicit_table({{1.0, -2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SequenceFamily::round(1.0, {0}), std::invalid_argument);
  }
}

TEST_CASE("config parsing") {
  const auto& schema = find_suite("mb-law").schema;
  SUBCASE("defaults and overrides") {
    const auto cfg = Config::parse("# comment\nm = 10  # trailing\nn_grid = 5, 6\n", schema);
    CHECK(cfg.get_uint("m") == 10);
    CHECK(cfg.get_uint_list("n_grid") == std::vector<std::uint64_t>{5, 6});
    CHECK(cfg.get_text("kind") == "surface");
    CHECK(cfg.get_real("a") == 1.0);
    CHECK(cfg.get_uint("seed") == 20260101);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(Config::parse("bogus = 1\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::parse("m = 1\nm = 2\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::parse("m = ten\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::parse("m = -3\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::parse("a = 1x\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::parse("n_grid = 1,,2\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::parse("just text\n", schema), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/mmlab.conf", schema), ConfigError);
  }
  SUBCASE("echo is in schema order") {
    const auto echo = Config::defaults(schema).echo();
    REQUIRE(echo.size() == schema.size());
    for (std::size_t i = 0; i < echo.size(); ++i) CHECK(echo[i].first == schema[i].key);
  }
}

TEST_CASE("unknown suite and bad suite values") {
  CHECK_THROWS_AS(find_suite("nope"), ConfigError);
  CHECK_THROWS_AS(run_suite("nope", Config::defaults(find_suite("mb-law").schema)), ConfigError);
  auto cfg = small_config("mb-law");
  cfg.set("kind", "cube");
  CHECK_THROWS_AS(run_suite("mb-law", cfg), ConfigError);
}

TEST_CASE("report emission") {
  ExperimentReport r;
  r.suite = "mb-law";
  r.columns = find_suite("mb-law").columns;
  CHECK(to_csv(r) == "j,n,k,m,dP,seed\n");
  CHECK_THROWS_AS(r.add_row({std::uint64_t{1}}), std::invalid_argument);

  r.master_seed = 7;
  r.config = {{"m", "10"}, {"kind", "surface"}};
  r.add_row({std::uint64_t{1}, std::uint64_t{50}, std::uint64_t{1}, std::uint64_t{10}, 0.125,
             std::uint64_t{99}});
  r.add_row({std::uint64_t{2}, std::uint64_t{200}, std::uint64_t{1}, std::uint64_t{10},
             std::nan(""), std::uint64_t{100}});
  r.add_aggregate("note", std::string("a,\"b\""));
  r.notes.push_back("hello");
  const auto json = to_json(r);
  CHECK(to_json(parse_json_report(json)) == json);
  CHECK(to_json(r) == json);
  CHECK(to_csv(r) == "j,n,k,m,dP,seed\n1,50,1,10,0.125,99\n2,200,1,10,nan,100\n");
  CHECK(std::isnan(parse_json_report(json).column("dP")[1]));

  const auto path = std::filesystem::temp_directory_path() / "mmlab_report_test.csv";
  emit_report(r, ReportFormat::Csv, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == to_csv(r));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::Csv, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST_CASE("mb-law report has the fixed columns") {
  const auto rep = run_suite("mb-law", small_config("mb-law"));
  CHECK(rep.columns == std::vector<std::string>{"j", "n", "k", "m", "dP", "seed"});
  CHECK(rep.rows.size() == 2);
  CHECK(rep.master_seed == 20260101);
  CHECK(to_csv(rep).rfind("j,n,k,m,dP,seed\n", 0) == 0);
}

TEST_CASE("every suite has one row per j and matches its catalog columns") {
  for (const auto& info : suite_catalog()) {
    CAPTURE(info.name);
    const auto cfg = small_config(info.name);
    const auto rep = run_suite(info.name, cfg);
    CHECK(rep.columns == info.columns);
    CHECK(rep.rows.size() == cfg.get_uint_list("n_grid").size());
    CHECK_FALSE(rep.wall_clock_seconds.has_value());
  }
}

TEST_CASE("reports do not depend on the worker count") {
  for (const auto& info : suite_catalog()) {
    CAPTURE(info.name);
    const auto cfg = small_config(info.name);
    const auto one = to_json(run_suite(info.name, cfg, {1, false}));
    const auto eight = to_json(run_suite(info.name, cfg, {8, false}));
    CHECK(one == eight);
    CHECK(to_json(run_suite(info.name, cfg, {3, false})) == one);
  }
}

TEST_CASE("seed changes the samples") {
  auto cfg = small_config("mb-law");
  const auto a = run_suite("mb-law", cfg);
  cfg.set("seed", "5");
  const auto b = run_suite("mb-law", cfg);
  CHECK(a.column("dP") != b.column("dP"));
  CHECK(a.column("seed") != b.column("seed"));
  CHECK(b.master_seed == 5);
}

TEST_CASE("criteria suite reports hints and conditions") {
  const auto rep = run_suite("criteria", small_config("criteria"));
  CHECK(as_text(rep.aggregate("dims_grow")) == "yes");
  CHECK(as_text(rep.aggregate("rows_monotone")) == "yes");
  CHECK(as_text(rep.aggregate("hint_concentration-candidate")) == "yes");
  CHECK(std::get<double>(rep.aggregate("l2_partial_sum_64")) ==
        doctest::Approx(0.25 * (1.0 - std::pow(0.25, 64)) / 0.75));
}

TEST_CASE("timing is opt-in") {
  const auto rep = run_suite("criteria", small_config("criteria"), {1, true});
  REQUIRE(rep.wall_clock_seconds.has_value());
  CHECK(*rep.wall_clock_seconds >= 0.0);
}
