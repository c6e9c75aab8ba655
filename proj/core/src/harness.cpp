#include "dpso/harness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "dpso/error.hpp"
#include "dpso/stats.hpp"

namespace dpso {
namespace {

struct CellKey {
  std::string function;
  std::size_t dimension;
  Algorithm algorithm;
  std::size_t run_index;
};

auto key_tuple(const std::string& f, std::size_t d, Algorithm a, std::size_t r) {
  return std::make_tuple(std::string_view(f), d, static_cast<int>(a), r);
}

RunRecord run_cell(const ExperimentPlan& plan, const CellKey& key) {
  const BenchmarkSpec& spec = find_function(key.function);
  const SwarmConfig config = make_cell_config(plan, key.function, key.dimension, key.algorithm, key.run_index);
  RunResult result = run(config, spec.fn);
  RunRecord rec;
  rec.function = key.function;
  rec.dimension = key.dimension;
  rec.algorithm = key.algorithm;
  rec.run_index = key.run_index;
  rec.final_fitness = result.final_fitness;
  rec.final_position = std::move(result.final_position);
  rec.trace = std::move(result.trace);
  rec.wall_seconds = result.wall_seconds;
  rec.eval_count = result.eval_count;
  return rec;
}

}  // namespace

std::string_view to_string(Algorithm a) { return a == Algorithm::PSO ? "pso" : "dpso"; }

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  if (text == "pso") return Algorithm::PSO;
  if (text == "dpso") return Algorithm::DPSO;
  return std::nullopt;
}

void ExperimentPlan::validate() const {
  if (runs == 0) throw InvalidConfig("runs must be >= 1");
  if (functions.empty()) throw InvalidConfig("plan has no functions");
  if (dimensions.empty()) throw InvalidConfig("plan has no dimensions");
  if (algorithms.empty()) throw InvalidConfig("plan has no algorithms");
  if (workers == 0) throw InvalidConfig("workers must be >= 1");
  if (!(beta > 0.0)) throw InvalidConfig("beta must be > 0");
  if (alpha && !(*alpha > 0.0)) throw InvalidConfig("alpha must be > 0");
  for (const auto& f : functions) {
    const BenchmarkSpec& spec = find_function(f);
    for (std::size_t d : dimensions) {
      if (d == 0 || d < spec.min_dimension) {
        throw DimensionTooSmall(f + " cannot run at dimension " + std::to_string(d));
      }
    }
  }
  // Catches bad scalar settings before any cell runs.
  make_cell_config(*this, functions.front(), dimensions.front(), algorithms.front(), 0).validate();
}

std::size_t ExperimentPlan::cell_count() const {
  return functions.size() * dimensions.size() * algorithms.size() * runs;
}

SwarmConfig make_cell_config(const ExperimentPlan& plan, std::string_view function, std::size_t dimension,
                             Algorithm algorithm, std::size_t run_index) {
  const Bounds box = bounds(function, dimension);
  SwarmConfig c = plan.base_config;
  c.dimension = dimension;
  c.lb = box.lower;
  c.ub = box.upper;
  c.kernel = kernel_for_box(c.lb, c.ub, plan.beta, plan.kernel_family);
  if (plan.alpha) c.kernel.alpha = *plan.alpha;
  c.variant = algorithm == Algorithm::PSO ? Variant::Standard : Variant::Divergence;
  c.master_seed = plan.master_seed;
  c.run_index = run_index;
  return c;
}

bool canonical_less(const RunRecord& a, const RunRecord& b) {
  return key_tuple(a.function, a.dimension, a.algorithm, a.run_index) <
         key_tuple(b.function, b.dimension, b.algorithm, b.run_index);
}

void sort_canonical(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(), canonical_less);
}

ExperimentResult run_experiment_collect(const ExperimentPlan& plan, const ProgressFn& progress) {
  plan.validate();

  std::vector<std::string> functions = plan.functions;
  std::sort(functions.begin(), functions.end());
  functions.erase(std::unique(functions.begin(), functions.end()), functions.end());
  std::vector<std::size_t> dimensions = plan.dimensions;
  std::sort(dimensions.begin(), dimensions.end());
  dimensions.erase(std::unique(dimensions.begin(), dimensions.end()), dimensions.end());
  std::vector<Algorithm> algorithms = plan.algorithms;
  std::sort(algorithms.begin(), algorithms.end());
  algorithms.erase(std::unique(algorithms.begin(), algorithms.end()), algorithms.end());

  const std::size_t total = functions.size() * dimensions.size() * algorithms.size() * plan.runs;
  std::vector<std::optional<RunRecord>> slots(total);
  std::vector<std::optional<CellFailure>> failed(total);
  std::size_t done = 0;
  std::mutex progress_mutex;

  std::size_t base = 0;
  for (const auto& f : functions) {
    for (std::size_t d : dimensions) {
      // Cells of one (function, dimension) group, already in canonical order.
      std::vector<CellKey> cells;
      for (Algorithm a : algorithms) {
        for (std::size_t r = 0; r < plan.runs; ++r) cells.push_back({f, d, a, r});
      }

      if (plan.warmup) {
        try {
          (void)run_cell(plan, cells.front());
        } catch (const Error&) {
          // The timed cell reports the failure.
        }
      }

      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < cells.size(); idx = next.fetch_add(1)) {
          const CellKey& key = cells[idx];
          try {
            slots[base + idx] = run_cell(plan, key);
          } catch (const std::exception& e) {
            failed[base + idx] = CellFailure{key.function, key.dimension, key.algorithm, key.run_index, e.what()};
          }
          if (progress && slots[base + idx]) {
            std::lock_guard lock(progress_mutex);
            progress(*slots[base + idx], ++done, total);
          } else {
            std::lock_guard lock(progress_mutex);
            ++done;
          }
        }
      };

      const std::size_t n_threads = std::min(plan.workers, cells.size());
      if (n_threads <= 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      }
      base += cells.size();
    }
  }

  ExperimentResult out;
  out.records.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (slots[i]) out.records.push_back(std::move(*slots[i]));
    if (failed[i]) out.failures.push_back(std::move(*failed[i]));
  }
  return out;
}

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, const ProgressFn& progress) {
  ExperimentResult result = run_experiment_collect(plan, progress);
  if (!result.failures.empty()) {
    const CellFailure& f = result.failures.front();
    throw Error("cell " + f.function + " D=" + std::to_string(f.dimension) + " " +
                std::string(to_string(f.algorithm)) + " run " + std::to_string(f.run_index) +
                " failed: " + f.message);
  }
  return std::move(result.records);
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  using GroupKey = std::tuple<std::string, std::size_t, int>;
  struct Group {
    std::vector<double> fitness;
    std::vector<double> wall;
  };
  std::map<GroupKey, Group> groups;
  std::set<std::string> functions;
  std::set<std::size_t> dimensions;
  std::set<int> algorithms;
  // sums run in canonical order so the input order cannot change the result
  std::vector<const RunRecord*> ordered;
  ordered.reserve(records.size());
  for (const auto& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const RunRecord* a, const RunRecord* b) { return canonical_less(*a, *b); });
  for (const RunRecord* rp : ordered) {
    const RunRecord& r = *rp;
    auto& g = groups[{r.function, r.dimension, static_cast<int>(r.algorithm)}];
    g.fitness.push_back(r.final_fitness);
    g.wall.push_back(r.wall_seconds);
    functions.insert(r.function);
    dimensions.insert(r.dimension);
    algorithms.insert(static_cast<int>(r.algorithm));
  }
  for (const auto& f : functions) {
    for (std::size_t d : dimensions) {
      for (int a : algorithms) {
        if (!groups.contains({f, d, a})) {
          throw EmptyCell("no records for " + f + " D=" + std::to_string(d) + " " +
                          std::string(to_string(static_cast<Algorithm>(a))));
        }
      }
    }
  }

  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, g] : groups) {
    SummaryRow row;
    row.function = std::get<0>(key);
    row.dimension = std::get<1>(key);
    row.algorithm = static_cast<Algorithm>(std::get<2>(key));
    row.mean = stats::mean(g.fitness);
    row.std = stats::sample_std(g.fitness);
    row.median = stats::median(g.fitness);
    row.iqr_low = stats::percentile(g.fitness, 0.25);
    row.iqr_high = stats::percentile(g.fitness, 0.75);
    row.mean_wall_seconds = stats::mean(g.wall);
    rows.push_back(std::move(row));
  }

  // Rows of one (function, dimension) are adjacent in map order.
  for (std::size_t begin = 0; begin < rows.size();) {
    std::size_t end = begin;
    while (end < rows.size() && rows[end].function == rows[begin].function &&
           rows[end].dimension == rows[begin].dimension) {
      ++end;
    }
    std::size_t best = begin;
    bool unique = true;
    for (std::size_t i = begin + 1; i < end; ++i) {
      if (rows[i].mean < rows[best].mean) {
        best = i;
        unique = true;
      } else if (rows[i].mean == rows[best].mean) {
        unique = false;
      }
    }
    if (unique && end - begin > 1) rows[best].winner_flag = true;

    const GroupKey pso_key{rows[begin].function, rows[begin].dimension, static_cast<int>(Algorithm::PSO)};
    const GroupKey dpso_key{rows[begin].function, rows[begin].dimension, static_cast<int>(Algorithm::DPSO)};
    if (groups.contains(pso_key) && groups.contains(dpso_key)) {
      const double p = stats::mann_whitney_p(groups.at(pso_key).fitness, groups.at(dpso_key).fitness);
      for (std::size_t i = begin; i < end; ++i) rows[i].mann_whitney_p = p;
    }
    begin = end;
  }
  return rows;
}

std::vector<OverheadRow> overhead_report(const std::vector<SummaryRow>& summary) {
  std::map<std::pair<std::string, std::size_t>, std::pair<const SummaryRow*, const SummaryRow*>> pairs;
  for (const auto& row : summary) {
    auto& slot = pairs[{row.function, row.dimension}];
    (row.algorithm == Algorithm::PSO ? slot.first : slot.second) = &row;
  }
  std::vector<OverheadRow> out;
  out.reserve(pairs.size());
  for (const auto& [key, pair] : pairs) {
    if (!pair.first || !pair.second) {
      throw MissingPair("overhead needs both pso and dpso for " + key.first + " D=" + std::to_string(key.second));
    }
    out.push_back({key.first, key.second, pair.second->mean_wall_seconds / pair.first->mean_wall_seconds});
  }
  return out;
}

}  // namespace dpso
