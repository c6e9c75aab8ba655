#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dpso/error.hpp"
#include "dpso/harness.hpp"

using namespace dpso;

namespace {

ExperimentPlan small_plan() {
  ExperimentPlan p;
  p.functions = {"ackley", "sphere"};
  p.dimensions = {2, 5};
  p.runs = 3;
  p.base_config.swarm_size = 8;
  p.base_config.max_iterations = 30;
  return p;
}

RunRecord rec(std::string f, std::size_t d, Algorithm a, std::size_t r, double fit, double wall = 0.0) {
  RunRecord x;
  x.function = std::move(f);
  x.dimension = d;
  x.algorithm = a;
  x.run_index = r;
  x.final_fitness = fit;
  x.wall_seconds = wall;
  return x;
}

}  // namespace

TEST_CASE("record count is |F| x |D| x |A| x R, canonical order") {
  const ExperimentPlan p = small_plan();
  CHECK(p.cell_count() == 24);
  const auto records = run_experiment(p);
  REQUIRE(records.size() == 24);
  CHECK(std::is_sorted(records.begin(), records.end(), canonical_less));
  std::set<std::tuple<std::string, std::size_t, Algorithm, std::size_t>> keys;
  for (const auto& r : records) {
    keys.emplace(r.function, r.dimension, r.algorithm, r.run_index);
    CHECK(r.trace.size() == 31);
    CHECK(r.eval_count == 8 * 31);
    CHECK(r.final_position.size() == r.dimension);
  }
  CHECK(keys.size() == 24);
}

TEST_CASE("results do not depend on worker count") {
  ExperimentPlan p = small_plan();
  const auto serial = run_experiment(p);
  p.workers = 3;
  const auto parallel = run_experiment(p);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].function == parallel[i].function);
    CHECK(serial[i].run_index == parallel[i].run_index);
    CHECK(serial[i].trace == parallel[i].trace);
    CHECK(serial[i].final_position == parallel[i].final_position);
  }
}

TEST_CASE("pso and dpso cells share their starting swarm") {
  const ExperimentPlan p = small_plan();
  const auto a = make_cell_config(p, "ackley", 5, Algorithm::PSO, 2);
  const auto b = make_cell_config(p, "ackley", 5, Algorithm::DPSO, 2);
  CHECK(a.variant == Variant::Standard);
  CHECK(b.variant == Variant::Divergence);
  CHECK(a.run_index == b.run_index);
  CHECK(a.master_seed == b.master_seed);
  CHECK(a.lb == b.lb);
  const auto obj = find_function("ackley").fn;
  CHECK(initialize(a, obj) == initialize(b, obj));
}

TEST_CASE("dpso with c3 = 0 summarizes identically to pso") {
  ExperimentPlan p = small_plan();
  p.base_config.c3 = 0.0;
  auto records = run_experiment(p);
  for (auto& r : records) r.wall_seconds = 0.0;
  const auto rows = summarize(records);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].algorithm == Algorithm::PSO);
    CHECK(rows[i + 1].algorithm == Algorithm::DPSO);
    CHECK(rows[i].mean == rows[i + 1].mean);
    CHECK(rows[i].std == rows[i + 1].std);
    CHECK(rows[i].median == rows[i + 1].median);
    CHECK_FALSE(rows[i].winner_flag);
    CHECK_FALSE(rows[i + 1].winner_flag);
  }
}

TEST_CASE("summarize") {
  SUBCASE("constant sample") {
    std::vector<RunRecord> rs;
    for (std::size_t r = 0; r < 30; ++r) rs.push_back(rec("sphere", 10, Algorithm::PSO, r, 1.25));
    const auto rows = summarize(rs);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean == 1.25);
    CHECK(rows[0].std == 0.0);
    CHECK(rows[0].median == 1.25);
    CHECK(rows[0].iqr_low == 1.25);
    CHECK(rows[0].iqr_high == 1.25);
    CHECK_FALSE(rows[0].mann_whitney_p.has_value());
  }
  SUBCASE("four values") {
    std::vector<RunRecord> rs;
    for (std::size_t r = 0; r < 4; ++r) rs.push_back(rec("sphere", 10, Algorithm::PSO, r, 1.0 + r));
    const auto row = summarize(rs).at(0);
    CHECK(row.mean == 2.5);
    CHECK(row.std == doctest::Approx(1.2909944487358056));
    CHECK(row.median == 2.5);
    CHECK(row.iqr_low == doctest::Approx(1.75));
    CHECK(row.iqr_high == doctest::Approx(3.25));
  }
  SUBCASE("order of records does not matter") {
    std::vector<RunRecord> rs;
    for (std::size_t r = 0; r < 6; ++r) {
      rs.push_back(rec("ackley", 10, Algorithm::PSO, r, 3.0 + 0.1 * r, 0.2));
      rs.push_back(rec("ackley", 10, Algorithm::DPSO, r, 1.0 + 0.3 * r, 0.25));
      rs.push_back(rec("sphere", 10, Algorithm::PSO, r, 0.5 * r, 0.1));
      rs.push_back(rec("sphere", 10, Algorithm::DPSO, r, 0.7 * r, 0.1));
    }
    const auto base = summarize(rs);
    std::mt19937 gen(5);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(rs.begin(), rs.end(), gen);
      CHECK(summarize(rs) == base);
    }
    CHECK(base[1].winner_flag);
    CHECK_FALSE(base[0].winner_flag);
    CHECK(base[2].winner_flag);
    CHECK(base[0].mann_whitney_p.has_value());
    CHECK(base[0].mann_whitney_p == base[1].mann_whitney_p);
  }
  SUBCASE("a hole in the grid") {
    std::vector<RunRecord> rs{rec("sphere", 10, Algorithm::PSO, 0, 1.0), rec("ackley", 30, Algorithm::PSO, 0, 1.0)};
    CHECK_THROWS_AS(summarize(rs), EmptyCell);
  }
}

TEST_CASE("overhead report") {
  std::vector<RunRecord> rs;
  for (std::size_t r = 0; r < 3; ++r) {
    rs.push_back(rec("ackley", 30, Algorithm::PSO, r, 1.0, 0.21));
    rs.push_back(rec("ackley", 30, Algorithm::DPSO, r, 1.0, 0.26));
    rs.push_back(rec("sphere", 30, Algorithm::PSO, r, 1.0, 0.5));
    rs.push_back(rec("sphere", 30, Algorithm::DPSO, r, 1.0, 0.5));
  }
  const auto over = overhead_report(summarize(rs));
  REQUIRE(over.size() == 2);
  CHECK(over[0].function == "ackley");
  CHECK(over[0].overhead_ratio == doctest::Approx(0.26 / 0.21));
  CHECK(over[1].overhead_ratio == doctest::Approx(1.0));

  std::vector<RunRecord> only_pso{rec("sphere", 30, Algorithm::PSO, 0, 1.0, 0.5)};
  CHECK_THROWS_AS(overhead_report(summarize(only_pso)), MissingPair);
}

TEST_CASE("plan validation") {
  ExperimentPlan p = small_plan();
  CHECK_NOTHROW(p.validate());
  p.functions = {"nosuch"};
  CHECK_THROWS_AS(p.validate(), UnknownFunction);
  p = small_plan();
  p.functions = {"rosenbrock"};
  p.dimensions = {1};
  CHECK_THROWS_AS(p.validate(), DimensionTooSmall);
  p = small_plan();
  p.runs = 0;
  CHECK_THROWS_AS(p.validate(), InvalidConfig);
  p = small_plan();
  p.beta = 0.0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("failures are collected per cell") {
  ExperimentPlan p = small_plan();
  p.base_config.c3 = 1e300;
  p.base_config.vmax_fraction = 1.0;
  const auto res = run_experiment_collect(p);
  CHECK(res.records.size() + res.failures.size() == p.cell_count());
}

TEST_CASE("algorithm names") {
  CHECK(to_string(Algorithm::PSO) == "pso");
  CHECK(parse_algorithm("dpso") == Algorithm::DPSO);
  CHECK_FALSE(parse_algorithm("ga").has_value());
}
