#include "dpso/swarm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

#include "dpso/error.hpp"

namespace dpso {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidConfig(std::string(what) + " must be finite");
}

void check_state_matches(const SwarmState& s, const SwarmConfig& c) {
  const std::size_t cells = s.swarm_size * s.dimension;
  if (s.swarm_size != c.swarm_size || s.dimension != c.dimension || s.positions.size() != cells ||
      s.velocities.size() != cells || s.pbest_positions.size() != cells ||
      s.pbest_fitness.size() != s.swarm_size || s.gbest_position.size() != s.dimension) {
    throw InvalidConfig("swarm state does not match its configuration");
  }
}

double checked_eval(const Objective& objective, std::span<const double> x, std::size_t iteration,
                    std::size_t particle) {
  const double f = objective(x);
  if (!std::isfinite(f)) {
    std::ostringstream msg;
    msg << "objective returned " << f << " at iteration " << iteration << ", particle " << particle;
    throw NonFiniteObjective(msg.str());
  }
  return f;
}

// Writes the clamped velocity of particle i into out. The Standard branch is
// the plain inertia update; the Divergence branch is the same expression plus
// the modulation term, added last so c3 = 0 leaves every bit unchanged.
void compute_velocity(const SwarmState& s, std::size_t i, const SwarmConfig& c, const ParticleDraws& d,
                      double omega, std::span<const double> vmax, std::span<double> out) {
  const auto x = s.position(i);
  const auto v = s.velocity(i);
  const auto p = s.pbest(i);
  const auto& g = s.gbest_position;
  const std::size_t n = s.dimension;
  const bool per_dim = c.per_dimension_draws;

  if (c.variant == Variant::Standard) {
    for (std::size_t k = 0; k < n; ++k) {
      const double r1 = per_dim ? d.r1_dim[k] : d.r1;
      const double r2 = per_dim ? d.r2_dim[k] : d.r2;
      const double next = omega * v[k] + c.c1 * r1 * (p[k] - x[k]) + c.c2 * r2 * (g[k] - x[k]);
      out[k] = std::clamp(next, -vmax[k], vmax[k]);
    }
    return;
  }

  double sq_xg = 0.0;
  double sq_pg = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x[k] - g[k];
    const double dp = p[k] - g[k];
    sq_xg += dx * dx;
    sq_pg += dp * dp;
  }
  const double gate = c.c3 * d.r3 * kernel_from_sq_distance(c.kernel, sq_pg);
  const double denom = std::sqrt(sq_xg) + c.epsilon;
  for (std::size_t k = 0; k < n; ++k) {
    const double r1 = per_dim ? d.r1_dim[k] : d.r1;
    const double r2 = per_dim ? d.r2_dim[k] : d.r2;
    const double modulation = gate * ((x[k] - g[k]) / denom);
    const double next =
        omega * v[k] + c.c1 * r1 * (p[k] - x[k]) + c.c2 * r2 * (g[k] - x[k]) + modulation;
    out[k] = std::clamp(next, -vmax[k], vmax[k]);
  }
}

// Lowest index wins among equal minima.
std::size_t argmin_index(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

}  // namespace

double InertiaSchedule::at(double omega, std::size_t t, std::size_t T) const {
  if (kind == Kind::Constant) return omega;
  if (T == 0) return omega_max;
  return omega_max - (omega_max - omega_min) * (static_cast<double>(t) / static_cast<double>(T));
}

void SwarmConfig::validate() const {
  if (swarm_size == 0) throw InvalidConfig("swarm_size must be positive");
  if (dimension == 0) throw InvalidConfig("dimension must be positive");
  if (lb.size() != dimension || ub.size() != dimension) {
    throw InvalidConfig("bounds must have length " + std::to_string(dimension));
  }
  for (std::size_t k = 0; k < dimension; ++k) {
    require_finite(lb[k], "lb");
    require_finite(ub[k], "ub");
    if (lb[k] > ub[k]) throw BoundsInverted("lb > ub at coordinate " + std::to_string(k));
  }
  require_finite(omega, "omega");
  require_finite(c1, "c1");
  require_finite(c2, "c2");
  require_finite(c3, "c3");
  if (omega_schedule.kind == InertiaSchedule::Kind::LinearDecay) {
    require_finite(omega_schedule.omega_max, "omega_max");
    require_finite(omega_schedule.omega_min, "omega_min");
  }
  if (c3 < 0.0) throw InvalidConfig("c3 must be >= 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidConfig("epsilon must be > 0");
  if (!(vmax_fraction > 0.0 && vmax_fraction <= 1.0)) throw InvalidConfig("vmax_fraction must lie in (0, 1]");
  if (variant == Variant::Divergence) kernel.validate();
}

std::vector<double> SwarmConfig::vmax() const {
  std::vector<double> out(dimension);
  for (std::size_t k = 0; k < dimension; ++k) out[k] = vmax_fraction * (ub[k] - lb[k]);
  return out;
}

KernelSpec kernel_for_box(std::span<const double> lb, std::span<const double> ub, double beta,
                          KernelFamily family) {
  const double diameter = std::sqrt(squared_distance(ub, lb));
  const double sigma = beta * diameter;
  return {family, sigma, sigma, 1.0};
}

SwarmState initialize(const SwarmConfig& config, const Objective& objective) {
  config.validate();
  const std::size_t N = config.swarm_size;
  const std::size_t n = config.dimension;

  SwarmState s;
  s.swarm_size = N;
  s.dimension = n;
  s.positions.resize(N * n);
  s.velocities.assign(N * n, 0.0);
  s.pbest_fitness.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    uniform_box_into(config.master_seed, config.run_index, i, config.lb, config.ub, s.position(i));
    s.pbest_fitness[i] = checked_eval(objective, s.position(i), 0, i);
  }
  s.pbest_positions = s.positions;
  const std::size_t best = argmin_index(s.pbest_fitness);
  const auto best_row = s.pbest(best);
  s.gbest_position.assign(best_row.begin(), best_row.end());
  s.gbest_fitness = s.pbest_fitness[best];
  s.iteration = 0;
  s.eval_count = N;
  return s;
}

std::vector<double> repulsion_direction(std::span<const double> x, std::span<const double> g, double epsilon) {
  const double denom = std::sqrt(squared_distance(x, g)) + epsilon;
  std::vector<double> d(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) d[k] = (x[k] - g[k]) / denom;
  return d;
}

std::vector<double> modulation_velocity(std::span<const double> p, std::span<const double> g,
                                        std::span<const double> x, double c3, double r3,
                                        const KernelSpec& kernel, double epsilon) {
  const double gate = c3 * r3 * kernel_value(kernel, p, g);
  std::vector<double> out = repulsion_direction(x, g, epsilon);
  for (double& v : out) v = gate * v;
  return out;
}

std::vector<double> velocity_update(const SwarmState& state, std::size_t i, const SwarmConfig& config,
                                    const ParticleDraws& draws) {
  check_state_matches(state, config);
  if (config.per_dimension_draws &&
      (draws.r1_dim.size() != state.dimension || draws.r2_dim.size() != state.dimension)) {
    throw LengthMismatch("per-dimension draws must have one value per coordinate");
  }
  const double omega = config.omega_schedule.at(config.omega, state.iteration, config.max_iterations);
  const auto vmax = config.vmax();
  std::vector<double> out(state.dimension);
  compute_velocity(state, i, config, draws, omega, vmax, out);
  return out;
}

void step(SwarmState& state, const SwarmConfig& config, const Objective& objective) {
  check_state_matches(state, config);
  const std::size_t N = state.swarm_size;
  const std::size_t n = state.dimension;
  const std::size_t t = state.iteration;
  const double omega = config.omega_schedule.at(config.omega, t, config.max_iterations);
  const auto vmax = config.vmax();
  const bool modulated = config.variant == Variant::Divergence;

  std::vector<double> next_velocity(n);
  std::vector<double> r1_dim;
  std::vector<double> r2_dim;
  if (config.per_dimension_draws) {
    r1_dim.resize(n);
    r2_dim.resize(n);
  }

  for (std::size_t i = 0; i < N; ++i) {
    DrawAddress addr{config.master_seed, config.run_index, t, i, {}};
    ParticleDraws draws;
    if (config.per_dimension_draws) {
      for (std::size_t k = 0; k < n; ++k) {
        addr.slot = Slot::r1_dim(static_cast<std::uint32_t>(k));
        r1_dim[k] = uniform01(addr);
        addr.slot = Slot::r2_dim(static_cast<std::uint32_t>(k));
        r2_dim[k] = uniform01(addr);
      }
      draws.r1_dim = r1_dim;
      draws.r2_dim = r2_dim;
    } else {
      addr.slot = Slot::r1();
      draws.r1 = uniform01(addr);
      addr.slot = Slot::r2();
      draws.r2 = uniform01(addr);
    }
    if (modulated) {
      addr.slot = Slot::r3();
      draws.r3 = uniform01(addr);
    }

    // Row i is read only by particle i, so updating in place keeps the
    // iteration synchronous: gbest stays frozen until the reduction below.
    compute_velocity(state, i, config, draws, omega, vmax, next_velocity);
    auto v = state.velocity(i);
    auto x = state.position(i);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = next_velocity[k];
      x[k] = std::clamp(x[k] + v[k], config.lb[k], config.ub[k]);
    }
    const double f = checked_eval(objective, x, t + 1, i);
    if (f < state.pbest_fitness[i]) {
      state.pbest_fitness[i] = f;
      std::copy(x.begin(), x.end(), state.pbest(i).begin());
    }
  }

  const std::size_t best = argmin_index(state.pbest_fitness);
  if (state.pbest_fitness[best] < state.gbest_fitness) {
    const auto row = state.pbest(best);
    std::copy(row.begin(), row.end(), state.gbest_position.begin());
    state.gbest_fitness = state.pbest_fitness[best];
  }
  state.iteration = t + 1;
  state.eval_count += N;
}

RunResult run(const SwarmConfig& config, const Objective& objective) {
  const auto start = std::chrono::steady_clock::now();
  SwarmState state = initialize(config, objective);
  RunResult result;
  result.trace.reserve(config.max_iterations + 1);
  result.trace.push_back(state.gbest_fitness);
  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    step(state, config, objective);
    result.trace.push_back(state.gbest_fitness);
  }
  const auto stop = std::chrono::steady_clock::now();
  result.final_position = std::move(state.gbest_position);
  result.final_fitness = state.gbest_fitness;
  result.eval_count = state.eval_count;
  result.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

}  // namespace dpso
