#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dpso/dpso.hpp"

namespace dpso::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

// Scalar settings shared by `run` and `experiment`. Defaults are the
// reference protocol: N = 40, T = 1000, omega = 0.7298, c1 = c2 = 1.49618,
// c3 = 1, beta = 0.1, vmax = 0.2 (ub - lb), seed 42.
struct SwarmFlags {
  std::uint64_t seed = kDefaultMasterSeed;
  double c3 = 1.0;
  double beta = 0.1;
  std::optional<double> alpha;
  std::string kernel = "gaussian";
  double omega = 0.7298;
  double c1 = 1.49618;
  double c2 = 1.49618;
  double vmax_fraction = 0.2;
  std::size_t iterations = 1000;
  std::size_t swarm_size = 40;
  std::string draws = "per-dimension";

  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App& app) {
    opts["seed"] = app.add_option("--seed", seed, "Master seed of the draw stream")->capture_default_str();
    opts["c3"] = app.add_option("--c3", c3, "Modulation strength c3 (dpso only; reference value 1.0)")
                     ->capture_default_str()
                     ->check(CLI::NonNegativeNumber);
    opts["beta"] = app.add_option("--beta", beta, "Kernel bandwidth as a fraction of the box diameter, sigma = beta*|ub-lb|")
                       ->capture_default_str()
                       ->check(CLI::PositiveNumber);
    opts["alpha"] = app.add_option("--alpha", alpha, "Decay rate of the kl / hellinger kernels (default 1)")
                        ->check(CLI::PositiveNumber);
    opts["kernel"] = app.add_option("--kernel", kernel, "Similarity kernel family")
                         ->capture_default_str()
                         ->check(CLI::IsMember({"gaussian", "kl", "hellinger"}));
    opts["omega"] = app.add_option("--omega", omega, "Inertia weight (Clerc constriction value)")->capture_default_str();
    opts["c1"] = app.add_option("--c1", c1, "Cognitive coefficient (Clerc constriction value)")->capture_default_str();
    opts["c2"] = app.add_option("--c2", c2, "Social coefficient (Clerc constriction value)")->capture_default_str();
    opts["vmax_fraction"] = app.add_option("--vmax-fraction", vmax_fraction, "Velocity clamp as a fraction of ub - lb")
                                ->capture_default_str()
                                ->check(CLI::Range(0.0, 1.0));
    opts["iterations"] = app.add_option("--iterations", iterations, "Iterations T per run")
                             ->capture_default_str()
                             ->check(CLI::NonNegativeNumber);
    opts["swarm_size"] = app.add_option("--swarm-size", swarm_size, "Particles N per swarm")
                             ->capture_default_str()
                             ->check(CLI::PositiveNumber);
    opts["draws"] = app.add_option("--draws", draws, "r1, r2 drawn per coordinate or as one scalar per particle")
                        ->capture_default_str()
                        ->check(CLI::IsMember({"per-dimension", "scalar"}));
  }

  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }

  // Applies flags onto the plan; with only_given, untouched flags keep the
  // plan's (possibly file-provided) value.
  void apply(ExperimentPlan& plan, bool only_given) const {
    auto want = [&](const char* name) { return !only_given || given(name); };
    if (want("seed")) plan.master_seed = seed;
    if (want("c3")) plan.base_config.c3 = c3;
    if (want("beta")) plan.beta = beta;
    if (alpha) plan.alpha = alpha;
    if (want("kernel")) plan.kernel_family = *parse_kernel_family(kernel);
    if (want("omega")) plan.base_config.omega = omega;
    if (want("c1")) plan.base_config.c1 = c1;
    if (want("c2")) plan.base_config.c2 = c2;
    if (want("vmax_fraction")) plan.base_config.vmax_fraction = vmax_fraction;
    if (want("iterations")) plan.base_config.max_iterations = iterations;
    if (want("swarm_size")) plan.base_config.swarm_size = swarm_size;
    if (want("draws")) plan.base_config.per_dimension_draws = draws == "per-dimension";
  }
};

std::vector<std::string> split_names(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < items.size(); ++i) ss << (i ? "," : "") << items[i];
  return ss.str();
}

int cmd_list(const std::string& modality, std::ostream& out) {
  std::optional<Modality> filter;
  if (!modality.empty()) filter = parse_modality(modality);
  for (const auto& spec : registry()) {
    if (filter && spec.modality != *filter) continue;
    out << spec.name << '\t' << to_string(spec.modality) << '\t' << '[' << format_real(spec.lower_bound) << ", "
        << format_real(spec.upper_bound) << "]\n";
  }
  return kExitOk;
}

struct RunFlags {
  std::string function;
  std::size_t dimension = 10;
  std::string algorithm = "dpso";
  std::size_t run_index = 0;
  std::string trace_path;
  std::size_t trace_stride = 10;
};

int cmd_run(const RunFlags& rf, const SwarmFlags& sf, std::ostream& out, std::ostream& err) {
  ExperimentPlan plan;
  plan.functions = {rf.function};
  plan.dimensions = {rf.dimension};
  plan.algorithms = {*parse_algorithm(rf.algorithm)};
  plan.runs = 1;
  sf.apply(plan, false);
  try {
    plan.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunRecord rec;
  try {
    const SwarmConfig config = make_cell_config(plan, rf.function, rf.dimension, plan.algorithms.front(), rf.run_index);
    const RunResult result = run(config, find_function(rf.function).fn);
    rec.function = rf.function;
    rec.dimension = rf.dimension;
    rec.algorithm = plan.algorithms.front();
    rec.run_index = rf.run_index;
    rec.final_fitness = result.final_fitness;
    rec.final_position = result.final_position;
    rec.trace = result.trace;
    rec.wall_seconds = result.wall_seconds;
    rec.eval_count = result.eval_count;
    if (!rf.trace_path.empty()) write_traces({rec}, rf.trace_path, rf.trace_stride);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  out << "function " << rec.function << '\n'
      << "dimension " << rec.dimension << '\n'
      << "algorithm " << to_string(rec.algorithm) << '\n'
      << "seed " << plan.master_seed << '\n'
      << "final_fitness " << format_real(rec.final_fitness) << '\n'
      << "eval_count " << rec.eval_count << '\n'
      << "wall_seconds " << format_real(rec.wall_seconds) << '\n';
  return kExitOk;
}

struct ExperimentFlags {
  std::string config_path;
  std::vector<std::string> functions;
  std::vector<std::size_t> dimensions;
  std::vector<std::string> algorithms;
  std::size_t runs = 30;
  std::size_t workers = 1;
  std::string out_dir = "dpso-out";
  std::size_t trace_stride = 10;
  bool zero_timing = false;
  bool no_warmup = false;
  bool quiet = false;
  CLI::Option* functions_opt = nullptr;
  CLI::Option* dimensions_opt = nullptr;
  CLI::Option* algorithms_opt = nullptr;
  CLI::Option* runs_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

void print_digest(const std::vector<SummaryRow>& summary, std::ostream& out) {
  struct Tally {
    std::size_t pairs = 0, dpso = 0, pso = 0, ties = 0;
  };
  std::map<Modality, Tally> tally;
  for (std::size_t i = 0; i < summary.size();) {
    std::size_t j = i;
    const SummaryRow* pso = nullptr;
    const SummaryRow* dpso = nullptr;
    while (j < summary.size() && summary[j].function == summary[i].function &&
           summary[j].dimension == summary[i].dimension) {
      (summary[j].algorithm == Algorithm::PSO ? pso : dpso) = &summary[j];
      ++j;
    }
    Tally& t = tally[find_function(summary[i].function).modality];
    ++t.pairs;
    if (pso && pso->winner_flag) {
      ++t.pso;
    } else if (dpso && dpso->winner_flag) {
      ++t.dpso;
    } else {
      ++t.ties;
    }
    i = j;
  }
  out << "modality\tpairs\tdpso_wins\tpso_wins\tties\n";
  for (Modality m : {Modality::Unimodal, Modality::Multimodal}) {
    const Tally t = tally[m];
    out << to_string(m) << '\t' << t.pairs << '\t' << t.dpso << '\t' << t.pso << '\t' << t.ties << '\n';
  }
}

int cmd_experiment(const ExperimentFlags& ef, const SwarmFlags& sf, std::ostream& out, std::ostream& err) {
  ExperimentPlan plan;
  try {
    if (!ef.config_path.empty()) apply_plan_file(ef.config_path, plan);
    sf.apply(plan, true);
    if (ef.functions_opt->count()) {
      auto names = split_names(ef.functions);
      plan.functions = names.size() == 1 && names.front() == "all" ? list_functions() : names;
    }
    if (ef.dimensions_opt->count()) plan.dimensions = ef.dimensions;
    if (ef.algorithms_opt->count()) {
      plan.algorithms.clear();
      for (const auto& a : split_names(ef.algorithms)) {
        const auto alg = parse_algorithm(a);
        if (!alg) throw ParseError("unknown algorithm '" + a + "'");
        plan.algorithms.push_back(*alg);
      }
    }
    if (ef.runs_opt->count()) plan.runs = ef.runs;
    if (ef.workers_opt->count()) plan.workers = ef.workers;
    plan.warmup = !ef.no_warmup;
    plan.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::error_code ec;
  std::filesystem::create_directories(ef.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << ef.out_dir << ": " << ec.message() << '\n';
    return kExitRuntime;
  }

  ProgressFn progress;
  if (!ef.quiet) {
    progress = [&err](const RunRecord& r, std::size_t done, std::size_t total) {
      err << '[' << done << '/' << total << "] " << r.function << " D=" << r.dimension << ' ' << to_string(r.algorithm)
          << " run " << r.run_index << " f=" << format_real(r.final_fitness) << '\n';
    };
  }

  ExperimentResult result;
  try {
    result = run_experiment_collect(plan, progress);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  for (const auto& f : result.failures) {
    err << "failed: " << f.function << " D=" << f.dimension << ' ' << to_string(f.algorithm) << " run "
        << f.run_index << ": " << f.message << '\n';
  }

  ReportBundle bundle = ReportBundle::in_directory(ef.out_dir);
  bundle.metadata = {
      {"tool_version", kVersion},
      {"timestamp", utc_timestamp()},
      {"master_seed", std::to_string(plan.master_seed)},
      {"functions", join(plan.functions)},
      {"dimensions", join(plan.dimensions)},
      {"runs", std::to_string(plan.runs)},
      {"kernel", std::string(to_string(plan.kernel_family))},
      {"beta", format_real(plan.beta)},
      {"alpha", plan.alpha ? format_real(*plan.alpha) : "1"},
      {"c3", format_real(plan.base_config.c3)},
      {"omega", format_real(plan.base_config.omega)},
      {"c1", format_real(plan.base_config.c1)},
      {"c2", format_real(plan.base_config.c2)},
      {"vmax_fraction", format_real(plan.base_config.vmax_fraction)},
      {"iterations", std::to_string(plan.base_config.max_iterations)},
      {"swarm_size", std::to_string(plan.base_config.swarm_size)},
      {"draws", plan.base_config.per_dimension_draws ? "per-dimension" : "scalar"},
      {"workers", std::to_string(plan.workers)},
      {"trace_stride", std::to_string(ef.trace_stride)},
  };
  const TimingColumn timing = ef.zero_timing ? TimingColumn::Zeroed : TimingColumn::Measured;
  try {
    if (result.failures.empty()) {
      const auto summary = summarize(result.records);
      write_bundle(bundle, result.records, summary, ef.trace_stride, timing);
      print_digest(summary, out);
    } else {
      // Partial grids cannot be summarized; keep what finished.
      write_results(result.records, bundle.results_csv_path, timing);
      write_traces(result.records, bundle.traces_csv_path, ef.trace_stride);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return result.failures.empty() ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle swarm optimization with divergence-guided modulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.footer(
      "Defaults reproduce the reference protocol: N=40, T=1000, omega=0.7298, c1=c2=1.49618,\n"
      "c3=1.0, beta=0.1, vmax=0.2*(ub-lb), seed 42, D in {10,30,50}, 30 runs.\n"
      "Exit codes: 0 success, 1 runtime failure, 2 usage error.");

  std::string modality;
  auto* list = app.add_subcommand("list", "List benchmark functions with modality and bounds");
  list->add_option("--modality", modality, "Only unimodal or multimodal functions")
      ->check(CLI::IsMember({"unimodal", "multimodal"}, CLI::ignore_case));

  const auto names = list_functions();
  RunFlags rf;
  SwarmFlags run_sf;
  auto* run_cmd = app.add_subcommand("run", "Run one optimization and print its final fitness");
  run_cmd->add_option("--function", rf.function, "Benchmark function")->required()->check(CLI::IsMember(names));
  run_cmd->add_option("--dim,--dimension", rf.dimension, "Problem dimension")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--algorithm", rf.algorithm, "pso or dpso")
      ->capture_default_str()
      ->check(CLI::IsMember({"pso", "dpso"}));
  run_cmd->add_option("--run-index", rf.run_index, "Run stream index under the master seed")->capture_default_str();
  run_cmd->add_option("--trace", rf.trace_path, "Write the convergence trace CSV here");
  run_cmd->add_option("--trace-stride", rf.trace_stride, "Keep every k-th trace iteration")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run_sf.attach(*run_cmd);

  ExperimentFlags ef;
  SwarmFlags exp_sf;
  auto* exp = app.add_subcommand("experiment", "Run the PSO vs DPSO grid and write results, traces and summary");
  exp->add_option("--config", ef.config_path, "Plan file of key = value lines; flags override it")
      ->check(CLI::ExistingFile);
  ef.functions_opt = exp->add_option("--functions,--function", ef.functions, "Comma-separated functions or 'all' (default all 36)");
  ef.dimensions_opt = exp->add_option("--dimensions,--dimension", ef.dimensions, "Dimensions (default 10,30,50)")
                          ->delimiter(',')
                          ->check(CLI::PositiveNumber);
  ef.algorithms_opt = exp->add_option("--algorithm,--algorithms", ef.algorithms, "Algorithms (default pso,dpso)");
  ef.runs_opt = exp->add_option("--runs", ef.runs, "Runs per cell")->capture_default_str()->check(CLI::PositiveNumber);
  ef.workers_opt = exp->add_option("--workers", ef.workers, "Parallel cells; results do not depend on it")
                       ->capture_default_str()
                       ->check(CLI::PositiveNumber);
  exp->add_option("--out-dir", ef.out_dir, "Output directory")->capture_default_str();
  exp->add_option("--trace-stride", ef.trace_stride, "Keep every k-th trace iteration")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  exp->add_flag("--zero-timing", ef.zero_timing, "Write wall_seconds as 0 so results.csv is byte-reproducible");
  exp->add_flag("--no-warmup", ef.no_warmup, "Skip the untimed warm-up run per (function, dimension)");
  exp->add_flag("--quiet", ef.quiet, "No per-cell progress on stderr");
  exp_sf.attach(*exp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (*list) return cmd_list(modality, out);
  if (*run_cmd) return cmd_run(rf, run_sf, out, err);
  return cmd_experiment(ef, exp_sf, out, err);
}

}  // namespace dpso::cli
