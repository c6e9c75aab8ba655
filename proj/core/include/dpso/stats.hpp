#pragma once

#include <span>

namespace dpso::stats {

double mean(std::span<const double> v);

/// Sample standard deviation (divisor n - 1); 0 for fewer than two values.
double sample_std(std::span<const double> v);

/// Linear interpolation between order statistics at position q * (n - 1),
/// q in [0, 1]. The median of an even-sized sample is the midpoint.
double percentile(std::span<const double> v, double q);

inline double median(std::span<const double> v) { return percentile(v, 0.5); }

/// Two-sided Mann-Whitney U test, normal approximation with tie and
/// continuity correction. Returns 1 when every value is tied.
double mann_whitney_p(std::span<const double> a, std::span<const double> b);

}  // namespace dpso::stats
