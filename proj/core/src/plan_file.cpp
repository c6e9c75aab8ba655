#include "dpso/plan_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpso/error.hpp"

namespace dpso {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("plan line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) fail(line, "bad value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

}  // namespace

void apply_plan_text(std::string_view text, ExperimentPlan& plan) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) fail(line_no, "empty value for " + std::string(key));

    if (key == "functions") {
      if (value == "all") {
        plan.functions = list_functions();
      } else {
        plan.functions.clear();
        for (auto name : split_list(value)) {
          (void)find_function(name);
          plan.functions.emplace_back(name);
        }
      }
    } else if (key == "dimensions") {
      plan.dimensions.clear();
      for (auto d : split_list(value)) plan.dimensions.push_back(parse_number<std::size_t>(d, line_no, key));
    } else if (key == "algorithms") {
      plan.algorithms.clear();
      for (auto a : split_list(value)) {
        const auto alg = parse_algorithm(a);
        if (!alg) fail(line_no, "unknown algorithm '" + std::string(a) + "'");
        plan.algorithms.push_back(*alg);
      }
    } else if (key == "runs") {
      plan.runs = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "seed") {
      plan.master_seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "kernel") {
      const auto family = parse_kernel_family(value);
      if (!family) fail(line_no, "unknown kernel '" + std::string(value) + "'");
      plan.kernel_family = *family;
    } else if (key == "beta") {
      plan.beta = parse_number<double>(value, line_no, key);
    } else if (key == "alpha") {
      plan.alpha = parse_number<double>(value, line_no, key);
    } else if (key == "c3") {
      plan.base_config.c3 = parse_number<double>(value, line_no, key);
    } else if (key == "omega") {
      plan.base_config.omega = parse_number<double>(value, line_no, key);
    } else if (key == "c1") {
      plan.base_config.c1 = parse_number<double>(value, line_no, key);
    } else if (key == "c2") {
      plan.base_config.c2 = parse_number<double>(value, line_no, key);
    } else if (key == "vmax_fraction") {
      plan.base_config.vmax_fraction = parse_number<double>(value, line_no, key);
    } else if (key == "iterations") {
      plan.base_config.max_iterations = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "swarm_size") {
      plan.base_config.swarm_size = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "draws") {
      if (value != "per-dimension" && value != "scalar") fail(line_no, "draws must be per-dimension or scalar");
      plan.base_config.per_dimension_draws = value == "per-dimension";
    } else if (key == "workers") {
      plan.workers = parse_number<std::size_t>(value, line_no, key);
    } else {
      fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
}

void apply_plan_file(const std::filesystem::path& path, ExperimentPlan& plan) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read plan file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_plan_text(buf.str(), plan);
}

}  // namespace dpso
