#include "dpso/bench_suite.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

#include "dpso/error.hpp"

namespace dpso {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

inline double sq(double v) { return v * v; }

double sum_squares_plain(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// ---------------------------------------------------------------- unimodal

double sphere(std::span<const double> x) { return sum_squares_plain(x); }

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(1.0 - x[i]);
  }
  return s;
}

double sumsquares(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * x[i] * x[i];
  return s;
}

double schwefel2_22(std::span<const double> x) {
  double s = 0.0;
  double p = 1.0;
  for (double v : x) {
    s += std::fabs(v);
    p *= std::fabs(v);
  }
  return s + p;
}

double schwefel1_2(std::span<const double> x) {
  double s = 0.0;
  double prefix = 0.0;
  for (double v : x) {
    prefix += v;
    s += prefix * prefix;
  }
  return s;
}

double schwefel2_21(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

double schwefel2_20(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

double schwefel2_23(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double v2 = v * v;
    const double v4 = v2 * v2;
    s += v4 * v4 * v2;
  }
  return s;
}

double dixonprice(std::span<const double> x) {
  double s = sq(x[0] - 1.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    s += static_cast<double>(i + 1) * sq(2.0 * x[i] * x[i] - x[i - 1]);
  }
  return s;
}

double zakharov(std::span<const double> x) {
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s1 += x[i] * x[i];
    s2 += 0.5 * static_cast<double>(i + 1) * x[i];
  }
  const double s2sq = s2 * s2;
  return s1 + s2sq + s2sq * s2sq;
}

double rothyperellipsoid(std::span<const double> x) {
  const std::size_t d = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += static_cast<double>(d - i) * x[i] * x[i];
  return s;
}

double sumdiffpowers(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += std::pow(std::fabs(x[i]), static_cast<double>(i + 2));
  }
  return s;
}

double chungreynolds(std::span<const double> x) { return sq(sum_squares_plain(x)); }

double quartic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * sq(x[i] * x[i]);
  return s;
}

double cigar(std::span<const double> x) {
  double tail = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
  return x[0] * x[0] + 1e6 * tail;
}

// -------------------------------------------------------------- multimodal

double rastrigin(std::span<const double> x) {
  // 10D + sum(x^2 - 10 cos) regrouped per term so each summand is >= 0.
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
  return s;
}

double ackley(std::span<const double> x) {
  const double d = static_cast<double>(x.size());
  double sq_sum = 0.0;
  double cos_sum = 0.0;
  for (double v : x) {
    sq_sum += v * v;
    cos_sum += std::cos(2.0 * kPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq_sum / d)) - std::exp(cos_sum / d) + 20.0 + kE;
}

double griewank(std::span<const double> x) {
  double s = 0.0;
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + s / 4000.0 - p;
}

double schwefel(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * std::sin(std::sqrt(std::fabs(v)));
  return 418.9829 * static_cast<double>(x.size()) - s;
}

double levy(std::span<const double> x) {
  const std::size_t d = x.size();
  auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  double s = sq(std::sin(kPi * w(0)));
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const double wi = w(i);
    s += sq(wi - 1.0) * (1.0 + 10.0 * sq(std::sin(kPi * wi + 1.0)));
  }
  const double wd = w(d - 1);
  s += sq(wd - 1.0) * (1.0 + sq(std::sin(2.0 * kPi * wd)));
  return s;
}

double bohachevsky(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i];
    const double b = x[i + 1];
    s += a * a + 2.0 * b * b - 0.3 * std::cos(3.0 * kPi * a) - 0.4 * std::cos(4.0 * kPi * b) + 0.7;
  }
  return s;
}

double salomon(std::span<const double> x) {
  const double r = std::sqrt(sum_squares_plain(x));
  return 1.0 - std::cos(2.0 * kPi * r) + 0.1 * r;
}

double alpine1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v * std::sin(v) + 0.1 * v);
  return s;
}

double xinsheyang2(std::span<const double> x) {
  double abs_sum = 0.0;
  double sin_sum = 0.0;
  for (double v : x) {
    abs_sum += std::fabs(v);
    sin_sum += std::sin(v * v);
  }
  return abs_sum * std::exp(-sin_sum);
}

double qing(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += sq(x[i] * x[i] - static_cast<double>(i + 1));
  return s;
}

double pathological(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i];
    const double b = x[i + 1];
    const double num = sq(std::sin(std::sqrt(100.0 * a * a + b * b))) - 0.5;
    const double den = 1.0 + 0.001 * sq(sq(a - b));
    s += 0.5 + num / den;
  }
  return s;
}

double schafferf6(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double r2 = x[i] * x[i] + x[i + 1] * x[i + 1];
    s += 0.5 + (sq(std::sin(std::sqrt(r2))) - 0.5) / sq(1.0 + 0.001 * r2);
  }
  return s;
}

double wavy(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::cos(10.0 * v) * std::exp(-0.5 * v * v);
  return 1.0 - s / static_cast<double>(x.size());
}

struct WeierstrassTable {
  static constexpr int kTerms = 21;  // k = 0..20
  std::array<double, kTerms> a_pow{};
  std::array<double, kTerms> two_pi_b_pow{};
  double offset_per_dim = 0.0;  // sum_k a^k cos(pi b^k)

  WeierstrassTable() {
    double ak = 1.0;
    double bk = 1.0;
    for (int k = 0; k < kTerms; ++k) {
      a_pow[k] = ak;
      two_pi_b_pow[k] = 2.0 * kPi * bk;
      // (2*pi*b^k) * 0.5 rounds identically to pi*b^k, so the x = 0 point
      // cancels exactly against this offset.
      offset_per_dim += ak * std::cos(two_pi_b_pow[k] * 0.5);
      ak *= 0.5;
      bk *= 3.0;
    }
  }
};

double weierstrass(std::span<const double> x) {
  static const WeierstrassTable table;
  double s = 0.0;
  for (double v : x) {
    const double shifted = v + 0.5;
    for (int k = 0; k < WeierstrassTable::kTerms; ++k) {
      s += table.a_pow[k] * std::cos(table.two_pi_b_pow[k] * shifted);
    }
  }
  return s - static_cast<double>(x.size()) * table.offset_per_dim;
}

double pinter(std::span<const double> x) {
  // Cyclic neighbours: x_0 = x_D and x_{D+1} = x_1.
  const std::size_t d = x.size();
  double quad = 0.0;
  double sin_term = 0.0;
  double log_term = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double prev = x[(i + d - 1) % d];
    const double cur = x[i];
    const double next = x[(i + 1) % d];
    const double w = static_cast<double>(i + 1);
    const double a = prev * std::sin(cur) + std::sin(next);
    const double b = prev * prev - 2.0 * cur + 3.0 * next - std::cos(cur) + 1.0;
    quad += w * cur * cur;
    sin_term += w * sq(std::sin(a));
    log_term += w * std::log10(1.0 + w * b * b);
  }
  return quad + 20.0 * sin_term + log_term;
}

double stretchedv(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double t = x[i] * x[i] + x[i + 1] * x[i + 1];
    s += std::pow(t, 0.25) * (sq(std::sin(50.0 * std::pow(t, 0.1))) + 0.1);
  }
  return s;
}

double happycat(std::span<const double> x) {
  const double d = static_cast<double>(x.size());
  double s2 = 0.0;
  double s1 = 0.0;
  for (double v : x) {
    s2 += v * v;
    s1 += v;
  }
  return std::pow(std::fabs(s2 - d), 0.25) + (0.5 * s2 + s1) / d + 0.5;
}

double hgbat(std::span<const double> x) {
  const double d = static_cast<double>(x.size());
  double s2 = 0.0;
  double s1 = 0.0;
  for (double v : x) {
    s2 += v * v;
    s1 += v;
  }
  return std::sqrt(std::fabs(s2 * s2 - s1 * s1)) + (0.5 * s2 + s1) / d + 0.5;
}

double whitley(std::span<const double> x) {
  double s = 0.0;
  for (double xi : x) {
    const double xi2 = xi * xi;
    for (double xj : x) {
      const double y = 100.0 * sq(xi2 - xj) + sq(1.0 - xj);
      s += y * y / 4000.0 - std::cos(y) + 1.0;
    }
  }
  return s;
}

double exponential(std::span<const double> x) { return 1.0 - std::exp(-0.5 * sum_squares_plain(x)); }

double cosinemixture(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v + 0.1 * (1.0 - std::cos(5.0 * kPi * v));
  return s;
}

// ------------------------------------------------------------- minimizers

std::vector<double> zeros(std::size_t d) { return std::vector<double>(d, 0.0); }
std::vector<double> ones(std::size_t d) { return std::vector<double>(d, 1.0); }
std::vector<double> minus_ones(std::size_t d) { return std::vector<double>(d, -1.0); }
std::vector<double> schwefel_min(std::size_t d) { return std::vector<double>(d, 420.9687); }

std::vector<double> dixonprice_min(std::size_t d) {
  // x_i = 2^{-(2^i - 2) / 2^i} = 2^{-(1 - 2^{1-i})}
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int one_based = static_cast<int>(i) + 1;
    x[i] = std::exp2(-(1.0 - std::ldexp(1.0, 1 - one_based)));
  }
  return x;
}

std::vector<double> qing_min(std::size_t d) {
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = std::sqrt(static_cast<double>(i + 1));
  return x;
}

std::vector<BenchmarkSpec> build_registry() {
  using M = Modality;
  const double two_pi = 2.0 * kPi;
  std::vector<BenchmarkSpec> r = {
      {"sphere", "Sphere", M::Unimodal, -5.12, 5.12, 0.0, false, 1, sphere, zeros},
      {"rosenbrock", "Rosenbrock", M::Unimodal, -5.0, 10.0, 0.0, false, 2, rosenbrock, ones},
      {"sumsquares", "SumSquares", M::Unimodal, -10.0, 10.0, 0.0, false, 1, sumsquares, zeros},
      {"schwefel2_22", "Schwefel2.22", M::Unimodal, -10.0, 10.0, 0.0, false, 1, schwefel2_22, zeros},
      {"schwefel1_2", "Schwefel1.2", M::Unimodal, -100.0, 100.0, 0.0, false, 1, schwefel1_2, zeros},
      {"schwefel2_21", "Schwefel2.21", M::Unimodal, -100.0, 100.0, 0.0, false, 1, schwefel2_21, zeros},
      {"schwefel2_20", "Schwefel2.20", M::Unimodal, -100.0, 100.0, 0.0, false, 1, schwefel2_20, zeros},
      {"schwefel2_23", "Schwefel2.23", M::Unimodal, -10.0, 10.0, 0.0, false, 1, schwefel2_23, zeros},
      {"dixonprice", "DixonPrice", M::Unimodal, -10.0, 10.0, 0.0, false, 1, dixonprice, dixonprice_min},
      {"zakharov", "Zakharov", M::Unimodal, -5.0, 10.0, 0.0, false, 1, zakharov, zeros},
      {"rothyperellipsoid", "RotHyperEllipsoid", M::Unimodal, -65.536, 65.536, 0.0, false, 1,
       rothyperellipsoid, zeros},
      {"sumdiffpowers", "SumDiffPowers", M::Unimodal, -1.0, 1.0, 0.0, false, 1, sumdiffpowers, zeros},
      {"chungreynolds", "ChungReynolds", M::Unimodal, -100.0, 100.0, 0.0, false, 1, chungreynolds, zeros},
      {"quartic", "Quartic", M::Unimodal, -1.28, 1.28, 0.0, false, 1, quartic, zeros},
      {"cigar", "Cigar", M::Unimodal, -100.0, 100.0, 0.0, false, 1, cigar, zeros},

      {"rastrigin", "Rastrigin", M::Multimodal, -5.12, 5.12, 0.0, false, 1, rastrigin, zeros},
      {"ackley", "Ackley", M::Multimodal, -32.768, 32.768, 0.0, false, 1, ackley, zeros},
      {"griewank", "Griewank", M::Multimodal, -600.0, 600.0, 0.0, false, 1, griewank, zeros},
      {"schwefel", "Schwefel", M::Multimodal, -500.0, 500.0, 0.0, true, 1, schwefel, schwefel_min},
      {"levy", "Levy", M::Multimodal, -10.0, 10.0, 0.0, false, 1, levy, ones},
      {"bohachevsky", "Bohachevsky", M::Multimodal, -100.0, 100.0, 0.0, false, 2, bohachevsky, zeros},
      {"salomon", "Salomon", M::Multimodal, -100.0, 100.0, 0.0, false, 1, salomon, zeros},
      {"alpine1", "Alpine1", M::Multimodal, -10.0, 10.0, 0.0, false, 1, alpine1, zeros},
      {"xinsheyang2", "XinSheYang2", M::Multimodal, -two_pi, two_pi, 0.0, false, 1, xinsheyang2, zeros},
      {"qing", "Qing", M::Multimodal, -500.0, 500.0, 0.0, false, 1, qing, qing_min},
      {"pathological", "Pathological", M::Multimodal, -100.0, 100.0, 0.0, false, 2, pathological, zeros},
      {"schafferf6", "SchafferF6", M::Multimodal, -100.0, 100.0, 0.0, false, 2, schafferf6, zeros},
      {"wavy", "Wavy", M::Multimodal, -kPi, kPi, 0.0, false, 1, wavy, zeros},
      {"weierstrass", "Weierstrass", M::Multimodal, -0.5, 0.5, 0.0, false, 1, weierstrass, zeros},
      {"pinter", "Pinter", M::Multimodal, -10.0, 10.0, 0.0, false, 2, pinter, zeros},
      {"stretchedv", "StretchedV", M::Multimodal, -10.0, 10.0, 0.0, false, 2, stretchedv, zeros},
      {"happycat", "HappyCat", M::Multimodal, -2.0, 2.0, 0.0, false, 1, happycat, minus_ones},
      {"hgbat", "HGBat", M::Multimodal, -2.0, 2.0, 0.0, false, 1, hgbat, minus_ones},
      {"whitley", "Whitley", M::Multimodal, -10.24, 10.24, 0.0, false, 1, whitley, ones},
      {"exponential", "Exponential", M::Multimodal, -1.0, 1.0, 0.0, false, 1, exponential, zeros},
      {"cosinemixture", "CosineMixture", M::Multimodal, -1.0, 1.0, 0.0, false, 1, cosinemixture, zeros},
  };
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return r;
}

}  // namespace

std::string_view to_string(Modality m) {
  return m == Modality::Unimodal ? "unimodal" : "multimodal";
}

std::optional<Modality> parse_modality(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "unimodal") return Modality::Unimodal;
  if (lower == "multimodal") return Modality::Multimodal;
  return std::nullopt;
}

std::span<const BenchmarkSpec> registry() {
  static const std::vector<BenchmarkSpec> specs = build_registry();
  return specs;
}

const BenchmarkSpec& find_function(std::string_view name) {
  const auto specs = registry();
  const auto it = std::lower_bound(specs.begin(), specs.end(), name,
                                   [](const BenchmarkSpec& s, std::string_view n) { return s.name < n; });
  if (it == specs.end() || it->name != name) throw UnknownFunction(std::string(name));
  return *it;
}

double evaluate(std::string_view name, std::span<const double> x) {
  const BenchmarkSpec& spec = find_function(name);
  if (x.empty() || x.size() < spec.min_dimension) {
    throw DimensionTooSmall(std::string(name) + " needs dimension >= " +
                            std::to_string(std::max<std::size_t>(spec.min_dimension, 1)) + ", got " +
                            std::to_string(x.size()));
  }
  return spec.fn(x);
}

Bounds bounds(std::string_view name, std::size_t dimension) {
  const BenchmarkSpec& spec = find_function(name);
  if (dimension == 0) throw DimensionTooSmall("dimension must be positive");
  return {std::vector<double>(dimension, spec.lower_bound), std::vector<double>(dimension, spec.upper_bound)};
}

std::vector<std::string> list_functions(std::optional<Modality> filter) {
  std::vector<std::string> out;
  for (const auto& s : registry()) {
    if (!filter || s.modality == *filter) out.emplace_back(s.name);
  }
  return out;
}

}  // namespace dpso
