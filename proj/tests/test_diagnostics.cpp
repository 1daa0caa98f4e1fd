#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "chemowave/diagnostics.hpp"
#include "chemowave/errors.hpp"

using namespace chemowave;

namespace {

const ModelParams kUnit{};
constexpr double kPi = std::numbers::pi;

// Composite Simpson on [a, b] with an even number of panels.
template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

Field sharp_indicator(const GridSpec& g, double a, double b) {
  Field f(g);
  const std::size_t ia = g.nearest_node(a), ib = g.nearest_node(b);
  for (std::size_t i = ia; i <= ib; ++i) f[i] = (i == ia || i == ib) ? 0.5 : 1.0;
  return f;
}

DiagnosticsRecord record_at(double t, double q) {
  DiagnosticsRecord r;
  r.t = t;
  r.sup_u_err = q;
  r.lp_v_err = {q, q, q};
  r.linf_v_err = q;
  return r;
}

}  // namespace

TEST_CASE("entropy") {
  const GridSpec g(0.0, 1.0, 1001);
  CHECK(entropy(Field(g, 1.0)) == 0.0);
  CHECK(entropy(Field(g, std::numbers::e)) == doctest::Approx(1.0).epsilon(1e-14));

  const GridSpec w(0.0, 20.0, 4001);
  const Field bump = Field::sample(w, [](double x) { return 1.0 + 0.1 * std::exp(-(x - 10) * (x - 10)); });
  const double quad = 0.5 * std::pow(lp_norm(bump - Field(w, 1.0), 2.0), 2);
  CHECK(entropy(bump) == doctest::Approx(quad).epsilon(0.1));
  CHECK(entropy(bump) > 0.0);

  Field bad(g, 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(entropy(bad), DomainError);
}

TEST_CASE("A and B functionals") {
  const GridSpec g(0.0, 10.0, 20001);
  const ABFunctionals zero = ab_functionals(Field(g, 1.0));
  CHECK(zero.a_u == 0.0);
  CHECK(zero.b == 0.0);
  CHECK(a_functional(Field(g, 1.0), Field(g, 0.0)) == 0.0);

  const Field u = Field(g, 1.0) + sharp_indicator(g, 4.0, 5.0);
  CHECK(a_functional(u, Field(g, 0.0)) == doctest::Approx(1.25).epsilon(2e-3));
  CHECK(a_functional(u, Field(g, 0.2)) == doctest::Approx(1.25 + 1.5 * 0.04 * 10.0).epsilon(2e-3));

  // Linear w = alpha x on [0, 1]: B = a^2/2 + a^2 (1 - a + a^2/3)/2 + a^4/6.
  const GridSpec unit(0.0, 1.0, 10001);
  const double alpha = 0.7;
  const Field ramp = Field::sample(unit, [alpha](double x) { return 1.0 + alpha * x; });
  const double exact = 0.5 * alpha * alpha + 0.5 * alpha * alpha * (1 - alpha + alpha * alpha / 3) +
                       std::pow(alpha, 4) / 6;
  CHECK(std::abs(ab_functionals(ramp).b - exact) < 1e-6);

  // w = x - 1/2 changes sign: the |w| term is 2 int_0^{1/2} (1 - y)^2 dy = 7/12.
  const Field centred = Field::sample(unit, [](double x) { return 0.5 + x; });
  const double exact_c = 0.5 + 0.5 * 7.0 / 12.0 + 0.5 * (1.0 / 12.0);
  CHECK(std::abs(ab_functionals(centred).b - exact_c) < 1e-6);
}

TEST_CASE("effective flux of the steady state") {
  const GridSpec g(0.0, 5.0, 51);
  const SimState a(Field(g, 1.0), Field(g, 0.0), 0.0), b(Field(g, 1.0), Field(g, 0.0), 0.5);
  const Field F = effective_flux(a, kUnit);
  for (double x : F.values()) CHECK(x == 0.0);
  CHECK(flux_identity_residual(a, b, kUnit) == 0.0);
  CHECK_THROWS_AS(flux_identity_residual(b, a, kUnit), UsageError);
  CHECK_THROWS_AS(flux_identity_residual(a, a, kUnit), UsageError);
}

TEST_CASE("flux identity residual on manufactured fields") {
  // u = 1 + sin x + c cos x, v = cos x; prev has c = 0, next has c = h.
  const double D = 0.8, chi = 1.3, h = 0.05, dt = 0.25;
  const ModelParams p = ModelParams::from_chi(D, chi);
  auto fx = [&](double x, double c) {
    const double ux = std::cos(x) - c * std::sin(x), uxx = -std::sin(x) - c * std::cos(x);
    const double uvx = ux * std::cos(x) - (1 + std::sin(x) + c * std::cos(x)) * std::sin(x);
    return D * uxx + chi * uvx;
  };
  auto defect = [&](double x) { return 0.5 * (fx(x, 0) + fx(x, h)) - h * std::cos(x) / dt; };
  const double expect = std::sqrt(simpson([&](double x) { return defect(x) * defect(x); }, 0, 2 * kPi, 20000));

  const GridSpec g(0.0, 2 * kPi, 100001);
  const Field v = Field::sample(g, [](double x) { return std::cos(x); });
  const SimState prev(Field::sample(g, [](double x) { return 1 + std::sin(x); }), v, 1.0);
  const SimState next(Field::sample(g, [h](double x) { return 1 + std::sin(x) + h * std::cos(x); }), v, 1.0 + dt);
  CHECK(std::abs(flux_identity_residual(prev, next, p) - expect) < 1e-8);
}

TEST_CASE("shift of the wave from mass balance") {
  const GridSpec g(-200.0, 200.0, 4001);
  const TravelingWave w = make_wave({2, 1, 0, 1}, kUnit);
  auto sampled = [&](double a) {
    return std::pair{Field::sample(g, [&](double x) { return w.U(x + a); }),
                     Field::sample(g, [&](double x) { return w.V(x + a); })};
  };
  for (double a : {0.0, 3.7, -12.25}) {
    const auto [u0, v0] = sampled(a);
    const ShiftResult r = shift_x0(u0, v0, w);
    CHECK(std::abs(r.x0 - a) < 1e-8);
    CHECK(std::abs(r.beta_residual) < 1e-8);
  }

  auto [u0, v0] = sampled(0.0);
  const Field bump = Field::sample(g, [](double x) { return std::exp(-(x - 30) * (x - 30)); });
  const double m = integral(bump);
  const ShiftResult r = shift_x0(u0 + bump, v0, w);
  CHECK(r.x0 == doctest::Approx(m / (1.0 - 2.0)).epsilon(1e-10));

  // Shifting the data one node to the right moves x0 by one dx.
  const std::size_t k = g.nearest_node(0.0);
  Field uj(g), vj(g), us(g), vs(g);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    uj[i] = i < k ? 2.0 : i > k ? 1.0 : 1.5;
    vj[i] = i < k ? 0.0 : i > k ? 1.0 : 0.5;
  }
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    us[i] = uj[i == 0 ? 0 : i - 1];
    vs[i] = vj[i == 0 ? 0 : i - 1];
  }
  CHECK(std::abs(shift_x0(uj, vj, w).x0 - shift_x0(us, vs, w).x0 - g.dx()) < 1e-10);

  const TravelingWave flat = make_wave({1, 1, 0, 0}, kUnit);
  CHECK_THROWS_AS(shift_x0(u0, v0, flat), DomainError);
}

TEST_CASE("perturbation anti-derivatives") {
  const GridSpec g(0.0, 400.0, 8001);
  const TravelingWave w = make_wave({2, 1, 0, 1}, kUnit);
  const double x0 = -100.0, t = 7.5;
  const Field U = Field::sample(g, [&](double x) { return w.U(x + x0 - w.s * t); });
  const Field V = Field::sample(g, [&](double x) { return w.V(x + x0 - w.s * t); });

  const PerturbationPair zero = antiderivatives(U, V, w, x0, t);
  CHECK(lp_norm(zero.phi, kInfNorm) == 0.0);
  CHECK(lp_norm(zero.psi, kInfNorm) == 0.0);

  auto gfun = [](double x) { return std::exp(-0.5 * (x - 200) * (x - 200)); };
  auto gder = [](double x) { return -(x - 200) * std::exp(-0.5 * (x - 200) * (x - 200)); };
  const Field dg = Field::sample(g, gder);
  const PerturbationPair pp = antiderivatives(U + dg, V + 2.0 * dg, w, x0, t);
  const Field gexact = Field::sample(g, gfun);
  // Cumulative trapezoid error is at most dx^2 / 12 * max |g''| = dx^2 / 12.
  const double bound = 1.01 * g.dx() * g.dx() / 12.0;
  CHECK(lp_norm(pp.phi - gexact, kInfNorm) < bound);
  CHECK(lp_norm(pp.psi - 2.0 * gexact, kInfNorm) < 2.0 * bound);
  CHECK(std::abs(pp.zero_mass_residual[0]) < 1e-10);
  CHECK(std::abs(pp.zero_mass_residual[1]) < 1e-10);
}

TEST_CASE("regularity probe") {
  const GridSpec g(0.0, 100.0, 1001);
  const ProbeResult lin = regularity_probe(Field::sample(g, [](double x) { return 3.0 * x - 7.0; }), 50.0, 5.0);
  CHECK(std::abs(lin.max_quotient - 3.0) < 1e-12);
  CHECK(lin.width == doctest::Approx(10.0));

  Field jump(g);
  for (std::size_t i = 500; i < g.n_nodes(); ++i) jump[i] = 1.0;
  const ProbeResult j = regularity_probe(jump, 50.0, 5.0);
  CHECK(j.max_quotient == 1.0 / g.dx());
  CHECK(j.width == doctest::Approx(g.dx()));

  CHECK_THROWS_AS(regularity_probe(jump, 2.0, 5.0), UsageError);
  CHECK_THROWS_AS(regularity_probe(jump, 98.0, 5.0), UsageError);
}

TEST_CASE("decay fits") {
  std::vector<DiagnosticsRecord> flat, expo;
  for (int i = 0; i <= 20; ++i) {
    flat.push_back(record_at(i, 0.3));
    expo.push_back(record_at(0.5 * i, std::exp(-0.5 * i)));
  }
  const DecayReport a = decay_series(flat);
  CHECK(std::abs(a.at("sup_u_err").tail_slope) < 1e-14);
  CHECK_FALSE(a.at("l4_v").decayed);
  const DecayReport b = decay_series(expo);
  for (const auto& e : b.entries) {
    CHECK(std::abs(e.tail_slope + 1.0) < 1e-6);
    CHECK(e.decayed);
  }
  CHECK(b.entries.size() == 5);
  CHECK_THROWS_AS(b.at("nope"), UsageError);
  flat.resize(2);
  CHECK_THROWS_AS(decay_series(flat), UsageError);
}

TEST_CASE("recorder along a constant-state run") {
  const GridSpec g(0.0, 100.0, 1001);
  Field u(g, 1.0), v(g, 0.0);
  for (std::size_t i = 450; i <= 550; ++i) {
    u[i] = 1.5;
    v[i] = 0.5;
  }
  const SimState s(u, v);
  SchemeConfig cfg;
  cfg.t_end = 3.0;
  cfg.snapshot_interval = 0.5;
  cfg = SchemeConfig::with_boundaries_of(s, cfg);
  DiagnosticsRecorder rec(kUnit, DiagnosticReference::constant(1.0, 0.0), ProbeWindow{50.0, 5.0});
  run(s, kUnit, cfg, rec.sinks());
  const auto& rs = rec.records();
  REQUIRE(rs.size() == 7);
  for (const auto& r : rs) {
    CHECK(r.sigma == std::min(1.0, r.t));
    CHECK(r.entropy >= 0.0);
    CHECK(r.b_func >= 0.0);
  }
  CHECK(rs[0].flux_identity_residual == 0.0);
  CHECK(rs[1].flux_identity_residual > 0.0);
  for (std::size_t k = 1; k < rs.size(); ++k) {
    CHECK(rs[k].free_energy <= rs[k - 1].free_energy);
    CHECK(rs[k].a_func <= rs[0].a_func);
  }

  std::ostringstream a, b;
  write_series_csv(a, rs);
  write_series_csv(b, rs);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(std::string(kSeriesHeader) + "\n", 0) == 0);
}

TEST_CASE("wave-relative flux residual vanishes on the exact wave") {
  const GridSpec g(0.0, 400.0, 4001);
  const TravelingWave w = make_wave({2, 1, 0, 1}, kUnit);
  const double x0 = -100.0;
  auto at = [&](double t) {
    return SimState(Field::sample(g, [&](double x) { return w.U(x + x0 - w.s * t); }),
                    Field::sample(g, [&](double x) { return w.V(x + x0 - w.s * t); }), t);
  };
  CHECK(flux_identity_residual_wave(at(1.0), at(1.01), kUnit, w, x0) < 1e-12);
  CHECK(flux_identity_residual(at(1.0), at(1.01), kUnit) < 1e-3);
}
