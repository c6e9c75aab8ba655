#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dpso/bench_suite.hpp"
#include "dpso/error.hpp"
#include "dpso/swarm.hpp"

using namespace dpso;

namespace {

double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

SwarmConfig config_for(std::string_view function, std::size_t dim, std::size_t N = 10, std::size_t T = 50) {
  const auto box = bounds(function, dim);
  SwarmConfig c;
  c.swarm_size = N;
  c.dimension = dim;
  c.max_iterations = T;
  c.lb = box.lower;
  c.ub = box.upper;
  c.kernel = kernel_for_box(c.lb, c.ub, 0.1);
  return c;
}

Objective objective_of(std::string_view name) { return find_function(name).fn; }

// The DPSO update for the 2-D sphere, one particle at a time with named scalars.
// Shares nothing with the engine except the addressed draws.
struct OracleSwarm {
  static constexpr std::size_t N = 4;
  std::array<std::array<double, 2>, N> x{}, v{}, p{};
  std::array<double, N> pf{};
  std::array<double, 2> g{};
  double gf = 0;
};

double sphere2(const std::array<double, 2>& z) { return z[0] * z[0] + z[1] * z[1]; }

OracleSwarm oracle_init(const SwarmConfig& c) {
  OracleSwarm s;
  for (std::size_t i = 0; i < OracleSwarm::N; ++i) {
    for (std::uint32_t k = 0; k < 2; ++k) {
      const double u = uniform01({c.master_seed, c.run_index, 0, i, Slot::init(k)});
      s.x[i][k] = c.lb[k] + u * (c.ub[k] - c.lb[k]);
      s.v[i][k] = 0.0;
    }
    s.p[i] = s.x[i];
    s.pf[i] = sphere2(s.x[i]);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < OracleSwarm::N; ++i) {
    if (s.pf[i] < s.pf[best]) best = i;
  }
  s.g = s.p[best];
  s.gf = s.pf[best];
  return s;
}

void oracle_step(OracleSwarm& s, const SwarmConfig& c, std::uint64_t t) {
  const double sigma = c.kernel.sigma;
  for (std::size_t i = 0; i < OracleSwarm::N; ++i) {
    double r1[2], r2[2];
    for (std::uint32_t k = 0; k < 2; ++k) {
      if (c.per_dimension_draws) {
        r1[k] = uniform01({c.master_seed, c.run_index, t, i, Slot::r1_dim(k)});
        r2[k] = uniform01({c.master_seed, c.run_index, t, i, Slot::r2_dim(k)});
      } else {
        r1[k] = uniform01({c.master_seed, c.run_index, t, i, Slot::r1()});
        r2[k] = uniform01({c.master_seed, c.run_index, t, i, Slot::r2()});
      }
    }
    const double r3 = uniform01({c.master_seed, c.run_index, t, i, Slot::r3()});

    const double dx0 = s.x[i][0] - s.g[0];
    const double dx1 = s.x[i][1] - s.g[1];
    const double denom = std::sqrt(dx0 * dx0 + dx1 * dx1) + c.epsilon;
    const double dp0 = s.p[i][0] - s.g[0];
    const double dp1 = s.p[i][1] - s.g[1];
    const double kappa = std::exp(-(dp0 * dp0 + dp1 * dp1) / (2 * sigma * sigma));

    std::array<double, 2> xn{};
    for (std::size_t k = 0; k < 2; ++k) {
      const double vmod = c.c3 * r3 * kappa * ((s.x[i][k] - s.g[k]) / denom);
      double vn = c.omega * s.v[i][k] + c.c1 * r1[k] * (s.p[i][k] - s.x[i][k]) +
                  c.c2 * r2[k] * (s.g[k] - s.x[i][k]) + vmod;
      const double vmax = c.vmax_fraction * (c.ub[k] - c.lb[k]);
      vn = std::min(std::max(vn, -vmax), vmax);
      s.v[i][k] = vn;
      xn[k] = std::min(std::max(s.x[i][k] + vn, c.lb[k]), c.ub[k]);
    }
    s.x[i] = xn;
    const double f = sphere2(xn);
    if (f < s.pf[i]) {
      s.pf[i] = f;
      s.p[i] = xn;
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < OracleSwarm::N; ++i) {
    if (s.pf[i] < s.pf[best]) best = i;
  }
  if (s.pf[best] < s.gf) {
    s.gf = s.pf[best];
    s.g = s.p[best];
  }
}

void require_matches(const SwarmState& st, const OracleSwarm& o) {
  for (std::size_t i = 0; i < OracleSwarm::N; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      REQUIRE(st.position(i)[k] == o.x[i][k]);
      REQUIRE(st.velocity(i)[k] == o.v[i][k]);
      REQUIRE(st.pbest(i)[k] == o.p[i][k]);
    }
    REQUIRE(st.pbest_fitness[i] == o.pf[i]);
  }
  REQUIRE(st.gbest_position[0] == o.g[0]);
  REQUIRE(st.gbest_position[1] == o.g[1]);
  REQUIRE(st.gbest_fitness == o.gf);
}

}  // namespace

TEST_CASE("step matches a straight-line oracle bit for bit (sphere, D = 2, N = 4)") {
  for (bool per_dim : {true, false}) {
    CAPTURE(per_dim);
    SwarmConfig c = config_for("sphere", 2, 4, 20);
    c.per_dimension_draws = per_dim;
    c.c3 = 1.0;
    // A wide kernel keeps the modulation term active in the comparison.
    c.kernel.sigma = 3.0;
    const Objective f = objective_of("sphere");

    SwarmState st = initialize(c, f);
    OracleSwarm o = oracle_init(c);
    require_matches(st, o);
    for (std::uint64_t t = 0; t < 20; ++t) {
      step(st, c, f);
      oracle_step(o, c, t);
      require_matches(st, o);
    }
    CHECK(st.iteration == 20);
    CHECK(st.eval_count == 4 * 21);
  }
}

TEST_CASE("initialize") {
  const Objective f = objective_of("rastrigin");
  SwarmConfig c = config_for("rastrigin", 5, 8);
  const SwarmState s = initialize(c, f);
  CHECK(std::all_of(s.velocities.begin(), s.velocities.end(), [](double v) { return v == 0.0; }));
  CHECK(s.pbest_positions == s.positions);
  CHECK(s.eval_count == 8);
  CHECK(s.iteration == 0);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(s.pbest_fitness[i] == f(s.position(i)));
    CHECK(s.gbest_fitness <= s.pbest_fitness[i]);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(s.position(i)[k] >= c.lb[k]);
      CHECK(s.position(i)[k] <= c.ub[k]);
    }
  }
  CHECK(s == initialize(c, f));

  c.run_index = 1;
  CHECK_FALSE(s == initialize(c, f));
}

TEST_CASE("initialize on a degenerate box") {
  SwarmConfig c;
  c.swarm_size = 5;
  c.dimension = 3;
  c.lb = {0.5, -1.0, 2.0};
  c.ub = c.lb;
  c.kernel.sigma = 1.0;
  const Objective f = objective_of("sphere");
  const SwarmState s = initialize(c, f);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::vector<double>(s.position(i).begin(), s.position(i).end()) == c.lb);
  }
  CHECK(s.gbest_fitness == f(c.lb));
}

TEST_CASE("gbest ties go to the lowest index") {
  SwarmConfig c;
  c.swarm_size = 4;
  c.dimension = 2;
  c.lb = {-1, -1};
  c.ub = {1, 1};
  c.kernel.sigma = 1.0;
  const SwarmState s = initialize(c, [](std::span<const double>) { return 3.0; });
  CHECK(std::vector<double>(s.gbest_position.begin(), s.gbest_position.end()) ==
        std::vector<double>(s.pbest(0).begin(), s.pbest(0).end()));
}

TEST_CASE("repulsion direction") {
  const auto d = repulsion_direction(std::vector<double>{3.0, 4.0}, std::vector<double>{0.0, 0.0}, 1e-9);
  CHECK(d[0] == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(d[1] == doctest::Approx(0.8).epsilon(1e-9));
  const auto zero = repulsion_direction(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}, 1e-9);
  CHECK(zero == std::vector<double>{0.0, 0.0});

  std::mt19937_64 gen(2);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(7), g(7);
    for (auto& v : x) v = n(gen);
    for (auto& v : g) v = n(gen);
    CHECK(norm(repulsion_direction(x, g, 1e-9)) <= 1.0);
  }
}

TEST_CASE("modulation velocity") {
  const KernelSpec kernel{KernelFamily::GaussianDirect, 0.5, 0.5, 1.0};
  const std::vector<double> g{0.0, 0.0, 0.0};
  const std::vector<double> x{2.0, -1.0, 0.5};

  SUBCASE("c3 = 0 gives the zero vector") {
    const auto v = modulation_velocity(g, g, x, 0.0, 0.9, kernel, 1e-9);
    CHECK(norm(v) == 0.0);
  }
  SUBCASE("open gate gives a unit vector along x - g") {
    const auto v = modulation_velocity(g, g, x, 1.0, 1.0, kernel, 1e-9);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-9));
    const double nx = norm(x);
    for (std::size_t k = 0; k < 3; ++k) CHECK(v[k] == doctest::Approx(x[k] / nx).epsilon(1e-9));
  }
  SUBCASE("closed gate when |p - g| = 10 sigma") {
    const std::vector<double> p{5.0, 0.0, 0.0};
    const auto v = modulation_velocity(p, g, x, 2.0, 0.99, kernel, 1e-9);
    CHECK(norm(v) <= std::exp(-50.0) * 2.0);
  }
  SUBCASE("norm never exceeds c3") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(-10, 10), r(0, 1), c(0, 5);
    for (int trial = 0; trial < 10000; ++trial) {
      std::vector<double> p(4), gg(4), xx(4);
      for (auto& v : p) v = u(gen) * 0.01;
      for (auto& v : gg) v = u(gen) * 0.01;
      for (auto& v : xx) v = u(gen);
      const double c3 = c(gen);
      CHECK(norm(modulation_velocity(p, gg, xx, c3, r(gen), kernel, 1e-9)) <= c3);
    }
  }
}

TEST_CASE("velocity update") {
  const Objective f = objective_of("griewank");
  SwarmConfig dpso = config_for("griewank", 6, 12);
  SwarmState s = initialize(dpso, f);
  for (int t = 0; t < 5; ++t) step(s, dpso, f);

  SUBCASE("c3 = 0 is bitwise the standard update") {
    SwarmConfig zero = dpso;
    zero.c3 = 0.0;
    SwarmConfig standard = dpso;
    standard.variant = Variant::Standard;
    const std::vector<double> r1(6, 0.3), r2(6, 0.8);
    for (std::size_t i = 0; i < 12; ++i) {
      const ParticleDraws d{0.31, 0.77, 0.99, r1, r2};
      CHECK(velocity_update(s, i, zero, d) == velocity_update(s, i, standard, d));
    }
  }
  SUBCASE("components are clamped to vmax") {
    SwarmConfig wild = dpso;
    wild.c1 = wild.c2 = 50.0;
    wild.c3 = 1e6;
    wild.omega = 10.0;
    const auto vmax = wild.vmax();
    const std::vector<double> r1(6, 0.99), r2(6, 0.99);
    for (std::size_t i = 0; i < 12; ++i) {
      const auto v = velocity_update(s, i, wild, {0.99, 0.99, 0.99, r1, r2});
      for (std::size_t k = 0; k < 6; ++k) CHECK(std::fabs(v[k]) <= vmax[k]);
    }
  }
  SUBCASE("fixed point when v = 0 and x = p = g") {
    SwarmConfig c;
    c.swarm_size = 1;
    c.dimension = 2;
    c.lb = {-1, -1};
    c.ub = {1, 1};
    c.c3 = 0.0;
    c.kernel.sigma = 1.0;
    SwarmState one;
    one.swarm_size = 1;
    one.dimension = 2;
    one.positions = {0.2, 0.3};
    one.velocities = {0.0, 0.0};
    one.pbest_positions = one.positions;
    one.pbest_fitness = {0.13};
    one.gbest_position = one.positions;
    one.gbest_fitness = 0.13;
    const std::vector<double> r(2, 0.5);
    CHECK(velocity_update(one, 0, c, {0.5, 0.5, 0.5, r, r}) == std::vector<double>{0.0, 0.0});
  }
}

TEST_CASE("step on a single particle at the optimum only advances counters") {
  SwarmConfig c;
  c.swarm_size = 1;
  c.dimension = 3;
  c.lb = {-1, -1, -1};
  c.ub = {1, 1, 1};
  c.c3 = 0.0;
  c.kernel.sigma = 1.0;
  SwarmState s;
  s.swarm_size = 1;
  s.dimension = 3;
  s.positions = {0, 0, 0};
  s.velocities = {0, 0, 0};
  s.pbest_positions = s.positions;
  s.pbest_fitness = {0.0};
  s.gbest_position = {0, 0, 0};
  s.gbest_fitness = 0.0;
  const SwarmState before = s;
  step(s, c, objective_of("sphere"));
  CHECK(s.positions == before.positions);
  CHECK(s.velocities == before.velocities);
  CHECK(s.pbest_positions == before.pbest_positions);
  CHECK(s.gbest_fitness == 0.0);
  CHECK(s.iteration == 1);
  CHECK(s.eval_count == before.eval_count + 1);
}

TEST_CASE("state invariants hold over 10^4 randomized steps") {
  std::mt19937_64 gen(99);
  const std::vector<std::string> names = {"ackley", "rosenbrock", "schwefel", "pinter", "happycat"};
  std::size_t steps = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::string name = names[trial % names.size()];
    SwarmConfig c = config_for(name, 2 + trial % 9, 5 + trial % 7, 200);
    c.c3 = std::uniform_real_distribution<double>(0.0, 3.0)(gen);
    c.run_index = static_cast<std::uint64_t>(trial);
    c.per_dimension_draws = trial % 2 == 0;
    c.kernel.family = static_cast<KernelFamily>(trial % 3);
    const auto vmax = c.vmax();
    const Objective f = objective_of(name);
    SwarmState s = initialize(c, f);
    double prev_g = s.gbest_fitness;
    for (std::size_t t = 0; t < c.max_iterations; ++t) {
      step(s, c, f);
      ++steps;
      for (std::size_t i = 0; i < c.swarm_size; ++i) {
        const double fx = f(s.position(i));
        REQUIRE(s.pbest_fitness[i] <= fx);
        for (std::size_t k = 0; k < c.dimension; ++k) {
          REQUIRE(s.position(i)[k] >= c.lb[k]);
          REQUIRE(s.position(i)[k] <= c.ub[k]);
          REQUIRE(std::fabs(s.velocity(i)[k]) <= vmax[k]);
        }
      }
      REQUIRE(s.gbest_fitness == *std::min_element(s.pbest_fitness.begin(), s.pbest_fitness.end()));
      REQUIRE(s.gbest_fitness <= prev_g);
      prev_g = s.gbest_fitness;
    }
  }
  CHECK(steps == 10000);
}

TEST_CASE("gate closes for far personal bests and opens fully at gbest") {
  SwarmConfig c = config_for("sphere", 4, 6);
  c.kernel.sigma = 0.01;
  SwarmState s = initialize(c, objective_of("sphere"));
  // pbests spread far apart (> 10 sigma from g and from each other)
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t k = 0; k < 4; ++k) s.pbest(i)[k] = -4.0 + 1.5 * static_cast<double>(i) + 0.01 * k;
  }
  s.gbest_position = {4.9, 4.9, 4.9, 4.9};
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    worst = std::max(worst, norm(modulation_velocity(s.pbest(i), s.gbest_position, s.position(i), c.c3, 0.999,
                                                     c.kernel, c.epsilon)));
  }
  CHECK(worst < c.c3 * 1e-20);

  for (std::size_t i = 0; i < 6; ++i) {
    const double r3 = 0.25 + 0.1 * static_cast<double>(i);
    const auto d = repulsion_direction(s.position(i), s.gbest_position, c.epsilon);
    const auto v = modulation_velocity(s.gbest_position, s.gbest_position, s.position(i), c.c3, r3, c.kernel, c.epsilon);
    CHECK(norm(v) == doctest::Approx(c.c3 * r3 * norm(d)).epsilon(1e-15));
  }
}

TEST_CASE("run") {
  const Objective f = objective_of("levy");
  SUBCASE("T = 0 returns the initialization") {
    SwarmConfig c = config_for("levy", 5, 7, 0);
    const auto r = run(c, f);
    CHECK(r.trace.size() == 1);
    CHECK(r.final_fitness == initialize(c, f).gbest_fitness);
    CHECK(r.eval_count == 7);
  }
  SUBCASE("trace shape and monotonicity") {
    SwarmConfig c = config_for("levy", 5, 7, 120);
    const auto r = run(c, f);
    CHECK(r.trace.size() == 121);
    CHECK(r.eval_count == 7 * 121);
    CHECK(r.trace.back() == r.final_fitness);
    CHECK(f(r.final_position) == r.final_fitness);
    for (std::size_t t = 1; t < r.trace.size(); ++t) CHECK(r.trace[t] <= r.trace[t - 1]);
    CHECK(r.wall_seconds >= 0.0);
  }
  SUBCASE("c3 = 0 reproduces the standard variant exactly") {
    for (bool per_dim : {true, false}) {
      SwarmConfig zero = config_for("levy", 8, 10, 150);
      zero.c3 = 0.0;
      zero.per_dimension_draws = per_dim;
      SwarmConfig standard = zero;
      standard.variant = Variant::Standard;
      const auto a = run(zero, f);
      const auto b = run(standard, f);
      CHECK(a.trace == b.trace);
      CHECK(a.final_position == b.final_position);
    }
  }
  SUBCASE("repeatable") {
    const SwarmConfig c = config_for("levy", 5, 7, 60);
    CHECK(run(c, f).trace == run(c, f).trace);
  }
}

TEST_CASE("non-finite objective aborts with a diagnostic") {
  SwarmConfig c = config_for("sphere", 3, 4, 10);
  int calls = 0;
  const Objective bad = [&calls](std::span<const double>) {
    return ++calls > 6 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
  };
  SwarmState s = initialize(c, bad);
  CHECK_THROWS_AS(step(s, c, bad), NonFiniteObjective);
  CHECK_THROWS_AS(initialize(c, [](std::span<const double>) { return INFINITY; }), NonFiniteObjective);
}

TEST_CASE("config validation") {
  SwarmConfig ok = config_for("sphere", 3);
  CHECK_NOTHROW(ok.validate());
  auto broken = [&](auto mutate) {
    SwarmConfig c = ok;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.swarm_size = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.c3 = -0.1; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.epsilon = 0.0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.vmax_fraction = 0.0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.vmax_fraction = 1.5; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.lb.pop_back(); }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.lb[0] = 10.0; }).validate(), BoundsInverted);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.omega = NAN; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](SwarmConfig& c) { c.kernel.sigma = 0.0; }).validate(), NonPositiveBandwidth);
  // the standard variant never reads the kernel
  CHECK_NOTHROW(broken([](SwarmConfig& c) {
                  c.kernel.sigma = 0.0;
                  c.variant = Variant::Standard;
                }).validate());
}

TEST_CASE("sigma follows beta times the box diameter") {
  const auto box = bounds("ackley", 30);
  const auto k = kernel_for_box(box.lower, box.upper, 0.1);
  CHECK(k.sigma == doctest::Approx(0.1 * 65.536 * std::sqrt(30.0)).epsilon(1e-14));
  CHECK(k.sigma_k == k.sigma);
  CHECK(k.alpha == 1.0);
}

TEST_CASE("inertia schedules") {
  CHECK(InertiaSchedule::constant().at(0.7298, 500, 1000) == 0.7298);
  const auto lin = InertiaSchedule::linear_decay(0.9, 0.4);
  CHECK(lin.at(0.7, 0, 100) == 0.9);
  CHECK(lin.at(0.7, 50, 100) == doctest::Approx(0.65));
  CHECK(lin.at(0.7, 100, 100) == doctest::Approx(0.4));

  SwarmConfig c = config_for("rastrigin", 5, 10, 100);
  c.omega_schedule = lin;
  const auto r = run(c, objective_of("rastrigin"));
  CHECK(r.trace.size() == 101);
}
