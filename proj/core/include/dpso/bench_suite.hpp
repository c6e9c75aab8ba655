#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpso {

enum class Modality { Unimodal, Multimodal };

std::string_view to_string(Modality m);
// Accepts "unimodal" / "multimodal" (case-insensitive).
std::optional<Modality> parse_modality(std::string_view text);

using ObjectiveFn = double (*)(std::span<const double>);
using MinimizerFn = std::vector<double> (*)(std::size_t dimension);

/// A registered test function: evaluator, box, and what is known about its
/// global minimum. Bounds are the same interval in every coordinate.
struct BenchmarkSpec {
  std::string_view name;
  std::string_view display_name;
  Modality modality;
  double lower_bound;
  double upper_bound;
  double f_star = 0.0;
  // Only Schwefel: the table constant 418.9829 leaves a residual at x*.
  bool f_star_approximate = false;
  // Functions with an x_{i+1} term need at least two coordinates.
  std::size_t min_dimension = 1;
  ObjectiveFn fn = nullptr;
  // Null when no closed-form minimizer is registered.
  MinimizerFn x_star = nullptr;

  double operator()(std::span<const double> x) const { return fn(x); }
};

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// All 36 functions, alphabetically by name.
std::span<const BenchmarkSpec> registry();

/// Throws UnknownFunction.
const BenchmarkSpec& find_function(std::string_view name);

/// Throws UnknownFunction, DimensionTooSmall.
double evaluate(std::string_view name, std::span<const double> x);

/// Throws UnknownFunction, DimensionTooSmall (dimension 0).
Bounds bounds(std::string_view name, std::size_t dimension);

/// Alphabetical identifiers, optionally restricted to one modality.
std::vector<std::string> list_functions(std::optional<Modality> filter = std::nullopt);

}  // namespace dpso
