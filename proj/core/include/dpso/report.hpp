#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dpso/harness.hpp"

namespace dpso {

// File formats. All text is UTF-8 with LF line endings; reals are written
// in shortest round-trip decimal with '.' as separator.
//
//   results.csv  function,dimension,algorithm,run,final_fitness,wall_seconds,eval_count
//   traces.csv   function,dimension,algorithm,run,iteration,gbest_fitness
//   summary.json [ {function, dimension, algorithm, mean, std, median,
//                   iqr_low, iqr_high, mean_wall_seconds, winner_flag,
//                   mann_whitney_p}, ... ]

enum class TimingColumn {
  Measured,
  // wall_seconds written as 0 so the file depends only on plan and seed.
  Zeroed,
};

/// Rows are written in canonical order regardless of input order.
void write_results(const std::vector<RunRecord>& records, const std::filesystem::path& path,
                   TimingColumn timing = TimingColumn::Measured);

/// Iterations 0, stride, 2*stride, ... plus the final iteration.
void write_traces(const std::vector<RunRecord>& records, const std::filesystem::path& path,
                  std::size_t stride = 10);

void write_summary(const std::vector<SummaryRow>& summary, const std::filesystem::path& path);

/// Parsed results rows; trace and final_position are left empty.
std::vector<RunRecord> read_results(const std::filesystem::path& path);

struct TraceRow {
  std::string function;
  std::size_t dimension = 0;
  Algorithm algorithm = Algorithm::PSO;
  std::size_t run_index = 0;
  std::size_t iteration = 0;
  double gbest_fitness = 0.0;
};
std::vector<TraceRow> read_traces(const std::filesystem::path& path);

std::vector<SummaryRow> read_summary(const std::filesystem::path& path);

/// Iterations a trace of length T+1 contributes at the given stride.
std::vector<std::size_t> trace_iterations(std::size_t trace_length, std::size_t stride);

std::string format_real(double value);

struct ReportBundle {
  std::filesystem::path results_csv_path;
  std::filesystem::path traces_csv_path;
  std::filesystem::path summary_json_path;
  std::filesystem::path metadata_json_path;
  std::map<std::string, std::string> metadata;

  /// results.csv, traces.csv, summary.json, metadata.json under dir.
  static ReportBundle in_directory(const std::filesystem::path& dir);
};

/// Writes all four files; metadata is the only place a timestamp goes.
void write_bundle(const ReportBundle& bundle, const std::vector<RunRecord>& records,
                  const std::vector<SummaryRow>& summary, std::size_t trace_stride,
                  TimingColumn timing = TimingColumn::Measured);

}  // namespace dpso
