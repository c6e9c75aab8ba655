#include "dpso/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "dpso/error.hpp"

namespace dpso {
namespace {

constexpr std::string_view kResultsHeader =
    "function,dimension,algorithm,run,final_fitness,wall_seconds,eval_count";
constexpr std::string_view kTracesHeader = "function,dimension,algorithm,run,iteration,gbest_fitness";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoFailure("write to " + path.string() + " failed");
}

std::vector<const RunRecord*> canonical_view(const std::vector<RunRecord>& records) {
  std::vector<const RunRecord*> view;
  view.reserve(records.size());
  for (const auto& r : records) view.push_back(&r);
  std::stable_sort(view.begin(), view.end(),
                   [](const RunRecord* a, const RunRecord* b) { return canonical_less(*a, *b); });
  return view;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string() + " for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_field(std::string_view text, const std::filesystem::path& path, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": bad field '" + std::string(text) + "'");
  }
  return value;
}

Algorithm parse_algorithm_field(std::string_view text, const std::filesystem::path& path, std::size_t line) {
  const auto a = parse_algorithm(text);
  if (!a) throw ParseError(path.string() + ":" + std::to_string(line) + ": bad algorithm '" + std::string(text) + "'");
  return *a;
}

void expect_header(const std::vector<std::string>& lines, std::string_view header,
                   const std::filesystem::path& path) {
  if (lines.empty() || lines.front() != header) throw ParseError(path.string() + ": unexpected header");
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::vector<std::size_t> trace_iterations(std::size_t trace_length, std::size_t stride) {
  if (stride == 0) throw InvalidConfig("trace stride must be >= 1");
  std::vector<std::size_t> its;
  if (trace_length == 0) return its;
  const std::size_t last = trace_length - 1;
  for (std::size_t t = 0; t < last; t += stride) its.push_back(t);
  its.push_back(last);
  return its;
}

void write_results(const std::vector<RunRecord>& records, const std::filesystem::path& path, TimingColumn timing) {
  auto out = open_out(path);
  out << kResultsHeader << '\n';
  for (const RunRecord* r : canonical_view(records)) {
    const double wall = timing == TimingColumn::Measured ? r->wall_seconds : 0.0;
    out << r->function << ',' << r->dimension << ',' << to_string(r->algorithm) << ',' << r->run_index << ','
        << format_real(r->final_fitness) << ',' << format_real(wall) << ',' << r->eval_count << '\n';
  }
  finish(out, path);
}

void write_traces(const std::vector<RunRecord>& records, const std::filesystem::path& path, std::size_t stride) {
  if (stride == 0) throw InvalidConfig("trace stride must be >= 1");
  auto out = open_out(path);
  out << kTracesHeader << '\n';
  for (const RunRecord* r : canonical_view(records)) {
    for (std::size_t t : trace_iterations(r->trace.size(), stride)) {
      out << r->function << ',' << r->dimension << ',' << to_string(r->algorithm) << ',' << r->run_index << ','
          << t << ',' << format_real(r->trace[t]) << '\n';
    }
  }
  finish(out, path);
}

void write_summary(const std::vector<SummaryRow>& summary, const std::filesystem::path& path) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : summary) {
    nlohmann::ordered_json obj;
    obj["function"] = row.function;
    obj["dimension"] = row.dimension;
    obj["algorithm"] = to_string(row.algorithm);
    obj["mean"] = row.mean;
    obj["std"] = row.std;
    obj["median"] = row.median;
    obj["iqr_low"] = row.iqr_low;
    obj["iqr_high"] = row.iqr_high;
    obj["mean_wall_seconds"] = row.mean_wall_seconds;
    obj["winner_flag"] = row.winner_flag;
    obj["mann_whitney_p"] = row.mann_whitney_p ? nlohmann::ordered_json(*row.mann_whitney_p) : nullptr;
    arr.push_back(std::move(obj));
  }
  auto out = open_out(path);
  out << arr.dump(2) << '\n';
  finish(out, path);
}

std::vector<RunRecord> read_results(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  expect_header(lines, kResultsHeader, path);
  std::vector<RunRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv(lines[i]);
    if (f.size() != 7) throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": expected 7 fields");
    RunRecord r;
    r.function = std::string(f[0]);
    r.dimension = parse_field<std::size_t>(f[1], path, i + 1);
    r.algorithm = parse_algorithm_field(f[2], path, i + 1);
    r.run_index = parse_field<std::size_t>(f[3], path, i + 1);
    r.final_fitness = parse_field<double>(f[4], path, i + 1);
    r.wall_seconds = parse_field<double>(f[5], path, i + 1);
    r.eval_count = parse_field<std::uint64_t>(f[6], path, i + 1);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TraceRow> read_traces(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  expect_header(lines, kTracesHeader, path);
  std::vector<TraceRow> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv(lines[i]);
    if (f.size() != 6) throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": expected 6 fields");
    TraceRow r;
    r.function = std::string(f[0]);
    r.dimension = parse_field<std::size_t>(f[1], path, i + 1);
    r.algorithm = parse_algorithm_field(f[2], path, i + 1);
    r.run_index = parse_field<std::size_t>(f[3], path, i + 1);
    r.iteration = parse_field<std::size_t>(f[4], path, i + 1);
    r.gbest_fitness = parse_field<double>(f[5], path, i + 1);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string() + " for reading");
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!arr.is_array()) throw ParseError(path.string() + ": expected a JSON array");
  std::vector<SummaryRow> out;
  try {
    for (const auto& obj : arr) {
      SummaryRow row;
      row.function = obj.at("function").get<std::string>();
      row.dimension = obj.at("dimension").get<std::size_t>();
      const auto alg = parse_algorithm(obj.at("algorithm").get<std::string>());
      if (!alg) throw ParseError(path.string() + ": bad algorithm");
      row.algorithm = *alg;
      row.mean = obj.at("mean").get<double>();
      row.std = obj.at("std").get<double>();
      row.median = obj.at("median").get<double>();
      row.iqr_low = obj.at("iqr_low").get<double>();
      row.iqr_high = obj.at("iqr_high").get<double>();
      row.mean_wall_seconds = obj.at("mean_wall_seconds").get<double>();
      row.winner_flag = obj.at("winner_flag").get<bool>();
      const auto& p = obj.at("mann_whitney_p");
      if (!p.is_null()) row.mann_whitney_p = p.get<double>();
      out.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return out;
}

ReportBundle ReportBundle::in_directory(const std::filesystem::path& dir) {
  return {dir / "results.csv", dir / "traces.csv", dir / "summary.json", dir / "metadata.json", {}};
}

void write_bundle(const ReportBundle& bundle, const std::vector<RunRecord>& records,
                  const std::vector<SummaryRow>& summary, std::size_t trace_stride, TimingColumn timing) {
  for (const auto* p : {&bundle.results_csv_path, &bundle.traces_csv_path, &bundle.summary_json_path,
                        &bundle.metadata_json_path}) {
    std::error_code ec;
    if (p->has_parent_path()) std::filesystem::create_directories(p->parent_path(), ec);
  }
  write_results(records, bundle.results_csv_path, timing);
  write_traces(records, bundle.traces_csv_path, trace_stride);
  write_summary(summary, bundle.summary_json_path);
  nlohmann::ordered_json meta(bundle.metadata);
  auto out = open_out(bundle.metadata_json_path);
  out << meta.dump(2) << '\n';
  finish(out, bundle.metadata_json_path);
}

}  // namespace dpso
