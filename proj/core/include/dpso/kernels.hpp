#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace dpso {

// Similarity kernels between a personal best p and the global best g.
// The divergence families treat p and g as means of isotropic Gaussians
// N(p, sigma_k^2 I) and N(g, sigma_k^2 I) and map a closed-form divergence
// D to exp(-alpha D).

enum class KernelFamily { GaussianDirect, KLExp, HellingerExp };

std::string_view to_string(KernelFamily f);
// "gaussian", "kl", "hellinger"
std::optional<KernelFamily> parse_kernel_family(std::string_view text);

struct KernelSpec {
  KernelFamily family = KernelFamily::GaussianDirect;
  double sigma = 1.0;
  double sigma_k = 1.0;
  double alpha = 1.0;

  /// Throws NonPositiveBandwidth when sigma, sigma_k or alpha is not > 0.
  void validate() const;

  /// alpha = sigma_k^2 / sigma^2, for which KLExp reproduces GaussianDirect(sigma).
  static KernelSpec kl_equivalent(double sigma, double sigma_k);
};

/// exp(-|p-g|^2 / (2 sigma^2)).
double gaussian_kernel(std::span<const double> p, std::span<const double> g, double sigma);

/// KL(N(p, s^2 I) || N(g, s^2 I)) = |p-g|^2 / (2 s^2).
double kl_isotropic_gaussians(std::span<const double> p, std::span<const double> g, double sigma_k);

/// Squared Hellinger distance, 1 - exp(-|p-g|^2 / (8 s^2)).
double hellinger_sq_isotropic_gaussians(std::span<const double> p, std::span<const double> g, double sigma_k);

double kernel_value(const KernelSpec& spec, std::span<const double> p, std::span<const double> g);

/// Same as kernel_value when |p-g|^2 is already known. Does not validate spec.
double kernel_from_sq_distance(const KernelSpec& spec, double sq_distance);

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace dpso
