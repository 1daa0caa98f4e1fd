#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "chemowave/errors.hpp"
#include "chemowave/solver.hpp"
#include "chemowave/waves.hpp"

using namespace chemowave;

namespace {

const ModelParams kUnit{};

SimState constant_state(const GridSpec& g, double u, double v) { return SimState(Field(g, u), Field(g, v)); }

SchemeConfig config_for(const SimState& s, double t_end = 1.0, double interval = 1.0) {
  SchemeConfig c;
  c.t_end = t_end;
  c.snapshot_interval = interval;
  return SchemeConfig::with_boundaries_of(s, c);
}

SimState jump_state(const GridSpec& g) {
  const std::size_t k = g.nearest_node(50.0);
  Field u(g), v(g);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    u[i] = i < k ? 2.0 : i > k ? 1.0 : 1.5;
    v[i] = i < k ? 0.0 : i > k ? 1.0 : 0.5;
  }
  return SimState(u, v);
}

double wave_transport_error(std::size_t n) {
  const GridSpec g(0.0, 400.0, n);
  const TravelingWave w = make_wave({2, 1, 0, 1}, kUnit);
  const SimState s(Field::sample(g, [&](double x) { return w.U(x - 100.0); }),
                   Field::sample(g, [&](double x) { return w.V(x - 100.0); }));
  const RunReport r = run(s, kUnit, config_for(s, 20.0, 20.0));
  const Field exact = Field::sample(g, [&](double x) { return w.U(x - 100.0 - w.s * 20.0); });
  return lp_norm(r.final_state.u - exact, kInfNorm);
}

}  // namespace

TEST_CASE("characteristic speed bound") {
  const GridSpec g(0.0, 1.0, 11);
  CHECK(characteristic_speed_bound(constant_state(g, 1, 0), kUnit) == doctest::Approx(1.0));
  CHECK(characteristic_speed_bound(constant_state(g, 2, 1), kUnit) == doctest::Approx(2.0));
  CHECK(characteristic_speed_bound(constant_state(g, 0, 0), kUnit) == 0.0);
  SimState mixed = constant_state(g, 1, 0);
  mixed.u[3] = 2.0;
  mixed.v[3] = 1.0;
  CHECK(characteristic_speed_bound(mixed, kUnit) == doctest::Approx(2.0));
}

TEST_CASE("tridiagonal solve matches a dense reference") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const std::size_t n = 40;
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = d(rng);
    up[i] = d(rng);
    di[i] = 3.0 + d(rng);
    rhs[i] = d(rng);
  }
  const auto x = solve_tridiagonal(lo, di, up, rhs);
  for (std::size_t i = 0; i < n; ++i) {
    double ax = di[i] * x[i];
    if (i > 0) ax += lo[i] * x[i - 1];
    if (i + 1 < n) ax += up[i] * x[i + 1];
    CHECK(ax == doctest::Approx(rhs[i]).epsilon(1e-13));
  }
  std::vector<double> zero(n, 0.0);
  CHECK_THROWS_AS(solve_tridiagonal(zero, zero, zero, rhs), NumericalError);
}

TEST_CASE("constant states are fixed points") {
  const GridSpec g(0.0, 400.0, 4001);
  for (const auto& [u, v] : {std::pair{1.0, 0.0}, std::pair{2.7, -0.4}, std::pair{0.3, 5.0}}) {
    SimState s = constant_state(g, u, v);
    const SchemeConfig c = config_for(s);
    for (int k = 0; k < 200; ++k) s = step(s, kUnit, c);
    CHECK(s.step_count == 200);
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
      REQUIRE(s.u[i] == u);
      REQUIRE(s.v[i] == v);
    }
  }
}

TEST_CASE("time step follows the CFL rule and the cap") {
  const GridSpec g(0.0, 400.0, 4001);
  const SimState s = jump_state(g);
  const SchemeConfig c = config_for(s);
  const SimState n1 = step(s, kUnit, c);
  CHECK(n1.last_dt == doctest::Approx(0.4 * g.dx() / characteristic_speed_bound(s, kUnit)));
  CHECK(n1.t == n1.last_dt);
  const SimState n2 = step(s, kUnit, c, 1e-5);
  CHECK(n2.last_dt == 1e-5);
}

TEST_CASE("v mass changes only through the boundary flux") {
  const GridSpec g(0.0, 10.0, 501);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(0.5, 1.5);
  Field u(g), v(g);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    u[i] = d(rng);
    v[i] = d(rng) - 1.0;
  }
  SimState s(u, v);
  const SchemeConfig c = config_for(s);
  for (int k = 0; k < 100; ++k) {
    const SimState n = step(s, kUnit, c);
    const double lhs = integral(n.v) - integral(s.v);
    CHECK(std::abs(lhs - n.last_dt * discrete_boundary_flux(n.u)) < 1e-10);
    s = n;
  }

  // Flat far fields: the flux is the plain end difference.
  SimState j = jump_state(GridSpec(0.0, 400.0, 4001));
  const SchemeConfig cj = config_for(j);
  for (int k = 0; k < 20; ++k) {
    const SimState n = step(j, kUnit, cj);
    const double lhs = integral(n.v) - integral(j.v);
    CHECK(std::abs(lhs - n.last_dt * (n.u.back() - n.u.front())) < 1e-10);
    j = n;
  }
}

TEST_CASE("step errors") {
  const GridSpec g(0.0, 1.0, 11);
  SimState s = constant_state(g, 1, 0);
  SchemeConfig c = config_for(s);
  c.right.u = 1.1;
  CHECK_THROWS_AS(step(s, kUnit, c), UsageError);
  s.u[5] = std::nan("");
  CHECK_THROWS_AS(step(s, kUnit, config_for(constant_state(g, 1, 0))), NumericalError);

  SchemeConfig bad;
  bad.cfl = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SchemeConfig{};
  bad.diffusion_theta = 0.4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SchemeConfig{};
  bad.snapshot_interval = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("zero-length run") {
  const GridSpec g(0.0, 1.0, 11);
  const SimState s = constant_state(g, 1, 0);
  std::size_t calls = 0;
  DiagnosticSinks sinks;
  sinks.on_snapshot = [&](const SimState&, std::size_t idx) { CHECK(idx == calls++); };
  const RunReport r = run(s, kUnit, config_for(s, 0.0, 1.0), sinks);
  CHECK(r.steps == 0);
  CHECK(r.snapshots == 1);
  CHECK(calls == 1);
}

TEST_CASE("jump data: snapshots and a front moving right") {
  const GridSpec g(0.0, 400.0, 2001);
  const SimState s = jump_state(g);
  std::vector<double> times;
  DiagnosticSinks sinks;
  sinks.on_snapshot = [&](const SimState& st, std::size_t) { times.push_back(st.t); };
  const RunReport r = run(s, kUnit, config_for(s, 200.0, 20.0), sinks);
  REQUIRE(r.snapshots == 11);
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(times[k] == 20.0 * static_cast<double>(k));
  for (std::size_t k = 1; k < r.front_positions.size(); ++k) {
    CHECK(r.front_positions[k] > r.front_positions[k - 1]);
  }
  CHECK(r.front_positions.back() - r.front_positions.front() == doctest::Approx(200.0).epsilon(0.05));
  CHECK_FALSE(r.positivity_violated);
  CHECK(r.min_u >= 1.0 - 1e-9);
  CHECK_FALSE(r.boundary_warning.has_value());
}

TEST_CASE("front approaching a boundary is reported") {
  const GridSpec g(0.0, 100.0, 1001);
  const SimState s = jump_state(g);
  const RunReport r = run(s, kUnit, config_for(s, 45.0, 5.0));
  CHECK(r.boundary_warning.has_value());
}

TEST_CASE("nonpositive u is flagged, not clipped") {
  const GridSpec g(0.0, 10.0, 101);
  SimState s = constant_state(g, 1.0, 0.0);
  s.u[50] = -0.2;
  const RunReport r = run(s, kUnit, config_for(s, 0.01, 0.01));
  CHECK(r.positivity_violated);
  CHECK(r.min_u == -0.2);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].find("positivity") != std::string::npos);
}

TEST_CASE("constant-state data relaxes") {
  const GridSpec g(0.0, 300.0, 3001);
  Field u(g, 1.0), v(g, 0.0);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    if (g.x(i) > 140.0 && g.x(i) < 160.0) {
      u[i] = 2.0;
      v[i] = 1.0;
    }
  }
  const SimState s(u, v);
  const RunReport r = run(s, kUnit, config_for(s, 100.0, 100.0));
  CHECK(lp_norm(r.final_state.u - Field(g, 1.0), kInfNorm) < 1.0);
}

TEST_CASE("exact wave is transported at second order") {
  const double e1 = wave_transport_error(4001), e2 = wave_transport_error(8001);
  CHECK(e1 < 10.0 * 0.1);
  CHECK(e1 / e2 >= 1.8);
}

TEST_CASE("front position") {
  const GridSpec g(0.0, 10.0, 11);
  const Field u = Field::sample(g, [](double x) { return 3.0 - 0.2 * x; });
  CHECK(front_position(u) == doctest::Approx(5.0));
  Field bump(g, 1.0);
  bump[7] = 1.5;
  CHECK(front_position(bump) == 7.0);
}
