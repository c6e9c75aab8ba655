#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpso/bench_suite.hpp"
#include "dpso/kernels.hpp"
#include "dpso/swarm.hpp"

namespace dpso {

enum class Algorithm { PSO, DPSO };

std::string_view to_string(Algorithm a);  // "pso" / "dpso"
std::optional<Algorithm> parse_algorithm(std::string_view text);

/// Function x dimension x algorithm x run grid plus the swarm settings every
/// cell shares. Bounds, sigma and the seed stream are filled in per cell.
struct ExperimentPlan {
  std::vector<std::string> functions = list_functions();
  std::vector<std::size_t> dimensions = {10, 30, 50};
  std::vector<Algorithm> algorithms = {Algorithm::PSO, Algorithm::DPSO};
  std::size_t runs = 30;
  std::uint64_t master_seed = kDefaultMasterSeed;
  // swarm_size, max_iterations, omega, c1, c2, c3, epsilon, vmax_fraction,
  // omega_schedule and per_dimension_draws are taken from here.
  SwarmConfig base_config{};
  KernelFamily kernel_family = KernelFamily::GaussianDirect;
  double beta = 0.1;
  // Decay rate of the divergence kernels; 1 when unset.
  std::optional<double> alpha{};
  std::size_t workers = 1;
  // One untimed run per (function, dimension) before the timed cells.
  bool warmup = true;

  /// Throws UnknownFunction, DimensionTooSmall, InvalidConfig.
  void validate() const;
  std::size_t cell_count() const;
};

/// The configuration of a single cell. PSO and DPSO cells with the same run
/// index share seed and run stream, so they start from identical swarms and
/// see identical r1 / r2 draws.
SwarmConfig make_cell_config(const ExperimentPlan& plan, std::string_view function, std::size_t dimension,
                             Algorithm algorithm, std::size_t run_index);

struct RunRecord {
  std::string function;
  std::size_t dimension = 0;
  Algorithm algorithm = Algorithm::PSO;
  std::size_t run_index = 0;
  double final_fitness = 0.0;
  std::vector<double> final_position;
  std::vector<double> trace;
  double wall_seconds = 0.0;
  std::uint64_t eval_count = 0;
};

/// Orders by function, dimension, algorithm (pso before dpso), run.
bool canonical_less(const RunRecord& a, const RunRecord& b);
void sort_canonical(std::vector<RunRecord>& records);

struct CellFailure {
  std::string function;
  std::size_t dimension = 0;
  Algorithm algorithm = Algorithm::PSO;
  std::size_t run_index = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<RunRecord> records;    // canonical order
  std::vector<CellFailure> failures;  // canonical order
};

using ProgressFn = std::function<void(const RunRecord& finished, std::size_t done, std::size_t total)>;

/// Runs every cell, continuing past failures. Records come back in canonical
/// order whatever the worker count.
ExperimentResult run_experiment_collect(const ExperimentPlan& plan, const ProgressFn& progress = {});

/// As above but throws the first failure (with its cell) instead of
/// returning it.
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, const ProgressFn& progress = {});

struct SummaryRow {
  std::string function;
  std::size_t dimension = 0;
  Algorithm algorithm = Algorithm::PSO;
  double mean = 0.0;
  double std = 0.0;
  double median = 0.0;
  double iqr_low = 0.0;
  double iqr_high = 0.0;
  double mean_wall_seconds = 0.0;
  bool winner_flag = false;
  // Two-sided Mann-Whitney p between PSO and DPSO final fitness of the same
  // (function, dimension); unset unless both are present.
  std::optional<double> mann_whitney_p{};

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Aggregates final fitness per (function, dimension, algorithm). Throws
/// EmptyCell when the grid spanned by the records has a hole.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

struct OverheadRow {
  std::string function;
  std::size_t dimension = 0;
  double overhead_ratio = 0.0;  // DPSO / PSO mean wall time
};

/// Throws MissingPair unless both algorithms are summarized for every
/// (function, dimension).
std::vector<OverheadRow> overhead_report(const std::vector<SummaryRow>& summary);

}  // namespace dpso
