#include "dpso/kernels.hpp"

#include <cmath>
#include <string>

#include "dpso/error.hpp"

namespace dpso {
namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw NonPositiveBandwidth(std::string(what) + " must be finite and > 0, got " + std::to_string(value));
  }
}

void require_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("kernel inputs have lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
}

}  // namespace

std::string_view to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::GaussianDirect: return "gaussian";
    case KernelFamily::KLExp: return "kl";
    case KernelFamily::HellingerExp: return "hellinger";
  }
  return "gaussian";
}

std::optional<KernelFamily> parse_kernel_family(std::string_view text) {
  if (text == "gaussian") return KernelFamily::GaussianDirect;
  if (text == "kl") return KernelFamily::KLExp;
  if (text == "hellinger") return KernelFamily::HellingerExp;
  return std::nullopt;
}

void KernelSpec::validate() const {
  require_positive(sigma, "sigma");
  require_positive(sigma_k, "sigma_k");
  require_positive(alpha, "alpha");
}

KernelSpec KernelSpec::kl_equivalent(double sigma, double sigma_k) {
  return {KernelFamily::KLExp, sigma, sigma_k, (sigma_k * sigma_k) / (sigma * sigma)};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double gaussian_kernel(std::span<const double> p, std::span<const double> g, double sigma) {
  require_positive(sigma, "sigma");
  return std::exp(-squared_distance(p, g) / (2.0 * sigma * sigma));
}

double kl_isotropic_gaussians(std::span<const double> p, std::span<const double> g, double sigma_k) {
  require_positive(sigma_k, "sigma_k");
  return squared_distance(p, g) / (2.0 * sigma_k * sigma_k);
}

double hellinger_sq_isotropic_gaussians(std::span<const double> p, std::span<const double> g,
                                        double sigma_k) {
  require_positive(sigma_k, "sigma_k");
  // -expm1 keeps small distances accurate.
  return -std::expm1(-squared_distance(p, g) / (8.0 * sigma_k * sigma_k));
}

double kernel_from_sq_distance(const KernelSpec& spec, double sq_distance) {
  switch (spec.family) {
    case KernelFamily::GaussianDirect:
      return std::exp(-sq_distance / (2.0 * spec.sigma * spec.sigma));
    case KernelFamily::KLExp:
      return std::exp(-spec.alpha * (sq_distance / (2.0 * spec.sigma_k * spec.sigma_k)));
    case KernelFamily::HellingerExp:
      return std::exp(-spec.alpha * -std::expm1(-sq_distance / (8.0 * spec.sigma_k * spec.sigma_k)));
  }
  return 0.0;
}

double kernel_value(const KernelSpec& spec, std::span<const double> p, std::span<const double> g) {
  spec.validate();
  return kernel_from_sq_distance(spec, squared_distance(p, g));
}

}  // namespace dpso
