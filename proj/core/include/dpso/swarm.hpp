#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "dpso/kernels.hpp"
#include "dpso/rng.hpp"

namespace dpso {

using Objective = std::function<double(std::span<const double>)>;

/// Standard runs the plain inertia-weight update; Divergence adds the
/// kernel-gated repulsion term. Divergence with c3 = 0 is bit-identical to
/// Standard.
enum class Variant { Standard, Divergence };

struct InertiaSchedule {
  enum class Kind { Constant, LinearDecay };
  Kind kind = Kind::Constant;
  double omega_max = 0.9;
  double omega_min = 0.4;

  static InertiaSchedule constant() { return {}; }
  static InertiaSchedule linear_decay(double omega_max, double omega_min) {
    return {Kind::LinearDecay, omega_max, omega_min};
  }

  /// Inertia for iteration t of T; `omega` is the constant-schedule value.
  double at(double omega, std::size_t t, std::size_t T) const;
};

struct SwarmConfig {
  std::size_t swarm_size = 40;
  std::size_t dimension = 0;
  std::size_t max_iterations = 1000;
  double omega = 0.7298;
  InertiaSchedule omega_schedule{};
  double c1 = 1.49618;
  double c2 = 1.49618;
  double c3 = 1.0;
  Variant variant = Variant::Divergence;
  KernelSpec kernel{};
  double epsilon = 1e-9;
  double vmax_fraction = 0.2;
  // r1 and r2 drawn once per coordinate; false draws one scalar pair per
  // particle. r3 is always one scalar per particle.
  bool per_dimension_draws = true;
  std::vector<double> lb;
  std::vector<double> ub;
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::uint64_t run_index = 0;

  /// Throws InvalidConfig / BoundsInverted / NonPositiveBandwidth.
  void validate() const;

  /// vmax_fraction * (ub - lb), per coordinate.
  std::vector<double> vmax() const;
};

/// Gaussian kernel with sigma = beta * |ub - lb|_2; sigma_k = sigma and
/// alpha = 1 so the KL family coincides with it unless overridden.
KernelSpec kernel_for_box(std::span<const double> lb, std::span<const double> ub, double beta,
                          KernelFamily family = KernelFamily::GaussianDirect);

struct SwarmState {
  std::size_t swarm_size = 0;
  std::size_t dimension = 0;
  std::vector<double> positions;        // swarm_size x dimension, row-major
  std::vector<double> velocities;       // swarm_size x dimension
  std::vector<double> pbest_positions;  // swarm_size x dimension
  std::vector<double> pbest_fitness;    // swarm_size
  std::vector<double> gbest_position;   // dimension
  double gbest_fitness = 0.0;
  std::size_t iteration = 0;
  std::uint64_t eval_count = 0;

  std::span<double> position(std::size_t i) { return row(positions, i); }
  std::span<const double> position(std::size_t i) const { return row(positions, i); }
  std::span<double> velocity(std::size_t i) { return row(velocities, i); }
  std::span<const double> velocity(std::size_t i) const { return row(velocities, i); }
  std::span<double> pbest(std::size_t i) { return row(pbest_positions, i); }
  std::span<const double> pbest(std::size_t i) const { return row(pbest_positions, i); }

  friend bool operator==(const SwarmState&, const SwarmState&) = default;

 private:
  std::span<double> row(std::vector<double>& m, std::size_t i) {
    return {m.data() + i * dimension, dimension};
  }
  std::span<const double> row(const std::vector<double>& m, std::size_t i) const {
    return {m.data() + i * dimension, dimension};
  }
};

/// Per-particle uniform draws for one iteration. r1_dim / r2_dim are only
/// read when SwarmConfig::per_dimension_draws is set.
struct ParticleDraws {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  std::span<const double> r1_dim{};
  std::span<const double> r2_dim{};
};

/// Uniform positions in [lb, ub], zero velocities, pbest = positions and
/// gbest = lowest-index argmin. Counts N evaluations.
SwarmState initialize(const SwarmConfig& config, const Objective& objective);

/// (x - g) / (|x - g|_2 + epsilon).
std::vector<double> repulsion_direction(std::span<const double> x, std::span<const double> g, double epsilon);

/// c3 * r3 * kernel(p, g) * repulsion_direction(x, g). Norm never exceeds c3.
std::vector<double> modulation_velocity(std::span<const double> p, std::span<const double> g,
                                        std::span<const double> x, double c3, double r3,
                                        const KernelSpec& kernel, double epsilon);

/// New, clamped velocity for particle i given its draws. Dispatches on
/// config.variant; reads state.iteration for the inertia schedule.
std::vector<double> velocity_update(const SwarmState& state, std::size_t i, const SwarmConfig& config,
                                    const ParticleDraws& draws);

/// One synchronous iteration: every particle moves against the previous
/// iteration's global best, then the global best is reduced once.
/// Throws NonFiniteObjective.
void step(SwarmState& state, const SwarmConfig& config, const Objective& objective);

struct RunResult {
  std::vector<double> trace;  // gbest fitness after init and after each step
  std::vector<double> final_position;
  double final_fitness = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t eval_count = 0;
};

/// initialize + max_iterations steps, timed with a monotonic clock.
RunResult run(const SwarmConfig& config, const Objective& objective);

}  // namespace dpso
