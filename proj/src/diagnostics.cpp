#include "chemowave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "chemowave/errors.hpp"

namespace chemowave {

DiagnosticReference DiagnosticReference::constant(double u, double v) {
  DiagnosticReference r;
  r.u_far = u;
  r.v_far = v;
  return r;
}

DiagnosticReference DiagnosticReference::shifted_wave(const TravelingWave& w, double x0) {
  DiagnosticReference r;
  r.wave = w;
  r.x0 = x0;
  r.u_far = w.states.u_plus;
  r.v_far = w.states.v_plus;
  return r;
}

double DiagnosticReference::u(double x, double t) const {
  return wave ? wave->U(x + x0 - wave->s * t) : u_far;
}

double DiagnosticReference::v(double x, double t) const {
  return wave ? wave->V(x + x0 - wave->s * t) : v_far;
}

Field DiagnosticReference::u_field(const GridSpec& g, double t) const {
  return Field::sample(g, [&](double x) { return u(x, t); });
}

Field DiagnosticReference::v_field(const GridSpec& g, double t) const {
  return Field::sample(g, [&](double x) { return v(x, t); });
}

double entropy(const Field& u) {
  Field density(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      throw DomainError("entropy: u must be positive (node " + std::to_string(i) + ")");
    }
    density[i] = u[i] * std::log(u[i]) - u[i] + 1.0;
  }
  return integral(density);
}

namespace {

double squared_l2(const Field& f) {
  Field sq(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return integral(sq);
}

}  // namespace

ABFunctionals ab_functionals(const Field& u) {
  const GridSpec& g = u.grid();
  Field w(g), quad(g), quartic(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    w[i] = u[i] - 1.0;
    quad[i] = 2.0 * w[i] - w[i] * w[i];
    quartic[i] = w[i] * w[i] * w[i] * w[i];
  }
  const Field wx = derivative_x(w);
  Field damped(g), weighted(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    damped[i] = wx[i] - std::abs(w[i]) * wx[i];
    weighted[i] = w[i] * std::abs(wx[i]);
  }
  ABFunctionals out;
  out.a_u = squared_l2(w) + squared_l2(quad) / 8.0 + integral(quartic) / 8.0;
  out.b = 0.5 * (squared_l2(wx) + squared_l2(damped) + squared_l2(weighted));
  return out;
}

double a_functional(const Field& u, const Field& v) {
  return ab_functionals(u).a_u + 1.5 * squared_l2(v);
}

Field effective_flux(const SimState& state, const ModelParams& params) {
  const Field ux = derivative_x(state.u);
  Field F(state.grid());
  for (std::size_t i = 0; i < F.size(); ++i) {
    F[i] = params.D * ux[i] + params.chi * state.u[i] * state.v[i];
  }
  return F;
}

namespace {

double identity_residual(const Field& F_prev, const Field& F_next, const Field& w_prev,
                         const Field& w_next, double dt) {
  Field mid = 0.5 * (F_prev + F_next);
  Field r = derivative_x(mid);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (w_next[i] - w_prev[i]) / dt;
  return lp_norm(r, 2.0);
}

void require_ordered(const SimState& prev, const SimState& next) {
  if (!(next.t > prev.t)) throw UsageError("flux identity: need next.t > prev.t");
  if (!(prev.grid() == next.grid())) throw UsageError("flux identity: states on different grids");
}

Field wave_flux(const SimState& s, const ModelParams& params, const TravelingWave& wave,
                double x0) {
  const GridSpec& g = s.grid();
  const Field U = Field::sample(g, [&](double x) { return wave.U(x + x0 - wave.s * s.t); });
  const Field V = Field::sample(g, [&](double x) { return wave.V(x + x0 - wave.s * s.t); });
  const Field dx = derivative_x(s.u - U);
  Field F(g);
  for (std::size_t i = 0; i < F.size(); ++i) {
    F[i] = params.D * dx[i] + params.chi * (s.u[i] * s.v[i] - U[i] * V[i]);
  }
  return F;
}

}  // namespace

double flux_identity_residual(const SimState& prev, const SimState& next,
                              const ModelParams& params) {
  require_ordered(prev, next);
  return identity_residual(effective_flux(prev, params), effective_flux(next, params), prev.u,
                           next.u, next.t - prev.t);
}

double flux_identity_residual_wave(const SimState& prev, const SimState& next,
                                   const ModelParams& params, const TravelingWave& wave,
                                   double x0) {
  require_ordered(prev, next);
  const GridSpec& g = prev.grid();
  const Field w_prev =
      prev.u - Field::sample(g, [&](double x) { return wave.U(x + x0 - wave.s * prev.t); });
  const Field w_next =
      next.u - Field::sample(g, [&](double x) { return wave.U(x + x0 - wave.s * next.t); });
  return identity_residual(wave_flux(prev, params, wave, x0), wave_flux(next, params, wave, x0),
                           w_prev, w_next, next.t - prev.t);
}

ShiftResult shift_x0(const Field& u0, const Field& v0, const TravelingWave& wave) {
  const double jump = wave.states.u_plus - wave.states.u_minus;
  if (jump == 0.0) throw DomainError("shift_x0: u_plus equals u_minus");
  const GridSpec& g = u0.grid();
  const double target = integral(u0);

  auto mass_of_shift = [&](double a) {
    return integral(Field::sample(g, [&](double x) { return wave.U(x + a); }));
  };
  auto slope_of_shift = [&](double a) {
    return integral(Field::sample(g, [&](double x) { return wave.dU(x + a); }));
  };
  // g(a) = target - mass(a) is increasing in a (U is decreasing).
  auto residual = [&](double a) { return target - mass_of_shift(a); };

  double a = (target - mass_of_shift(0.0)) / jump;
  double lo = a, hi = a;
  double step = std::max(g.length(), 1.0);
  for (int k = 0; residual(lo) > 0.0; ++k) {
    if (k > 60) throw DomainError("shift_x0: no shift balances the u-mass");
    lo -= step;
    step *= 2.0;
  }
  step = std::max(g.length(), 1.0);
  for (int k = 0; residual(hi) < 0.0; ++k) {
    if (k > 60) throw DomainError("shift_x0: no shift balances the u-mass");
    hi += step;
    step *= 2.0;
  }
  // Safeguarded Newton on the bracket [lo, hi].
  for (int it = 0; it < 200; ++it) {
    const double r = residual(a);
    if (r == 0.0) break;
    (r < 0.0 ? lo : hi) = a;
    const double d = -slope_of_shift(a);
    double next = d > 0.0 ? a - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - a) <= 1e-15 * std::max(1.0, std::abs(a))) {
      a = next;
      break;
    }
    a = next;
  }

  ShiftResult out;
  out.x0 = a;
  out.beta_residual = integral(v0 - Field::sample(g, [&](double x) { return wave.V(x + a); }));
  return out;
}

PerturbationPair antiderivatives(const Field& u, const Field& v, const TravelingWave& wave,
                                 double x0, double t) {
  const GridSpec& g = u.grid();
  const double shift = x0 - wave.s * t;
  const Field du = u - Field::sample(g, [&](double x) { return wave.U(x + shift); });
  const Field dv = v - Field::sample(g, [&](double x) { return wave.V(x + shift); });
  PerturbationPair p{cumulative_integral(du), cumulative_integral(dv)};
  p.zero_mass_residual = {p.phi.back(), p.psi.back()};
  return p;
}

ProbeResult regularity_probe(const Field& v, double window_center, double window_halfwidth) {
  const GridSpec& g = v.grid();
  const double lo_x = window_center - window_halfwidth;
  const double hi_x = window_center + window_halfwidth;
  const double slack = 1e-9 * g.dx();
  if (!(window_halfwidth > 0.0) || lo_x < g.x_min() - slack || hi_x > g.x_max() + slack) {
    throw UsageError("regularity_probe: window outside grid");
  }
  const auto lo = static_cast<std::size_t>(std::ceil((lo_x - g.x_min()) / g.dx() - 1e-9));
  const auto hi = std::min(g.n_nodes() - 1,
                           static_cast<std::size_t>(std::floor((hi_x - g.x_min()) / g.dx() + 1e-9)));
  ProbeResult out;
  if (hi <= lo) return out;
  std::vector<double> q(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) q[i - lo] = std::abs(v[i + 1] - v[i]) / g.dx();
  out.max_quotient = *std::max_element(q.begin(), q.end());
  if (out.max_quotient > 0.0) {
    const auto over = std::count_if(q.begin(), q.end(),
                                    [&](double x) { return x > 0.5 * out.max_quotient; });
    out.width = static_cast<double>(over) * g.dx();
  }
  return out;
}

const DecayEntry& DecayReport::at(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw UsageError("decay report has no entry named " + name);
}

namespace {

DecayEntry fit_decay(std::string name, const std::vector<double>& t, const std::vector<double>& q) {
  constexpr double kFloor = 1e-300;
  DecayEntry e{std::move(name), q.front(), q.back()};
  const std::size_t start = t.size() / 2;
  const std::size_t m = t.size() - start;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = start; i < t.size(); ++i) {
    const double y = std::log(std::max(q[i], kFloor));
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  const double mm = static_cast<double>(m);
  const double denom = mm * stt - st * st;
  e.tail_slope = denom != 0.0 ? (mm * sty - st * sy) / denom : 0.0;
  e.decayed = e.final_value < 0.5 * e.initial;
  return e;
}

}  // namespace

DecayReport decay_series(const std::vector<DiagnosticsRecord>& records) {
  if (records.size() < 3) throw UsageError("decay_series: need at least 3 records");
  std::vector<double> t, sup_u, l2, l4, l6, linf;
  for (const auto& r : records) {
    t.push_back(r.t);
    sup_u.push_back(r.sup_u_err);
    l2.push_back(r.lp_v_err[0]);
    l4.push_back(r.lp_v_err[1]);
    l6.push_back(r.lp_v_err[2]);
    linf.push_back(r.linf_v_err);
  }
  DecayReport rep;
  rep.entries.push_back(fit_decay("sup_u_err", t, sup_u));
  rep.entries.push_back(fit_decay("l2_v", t, l2));
  rep.entries.push_back(fit_decay("l4_v", t, l4));
  rep.entries.push_back(fit_decay("l6_v", t, l6));
  rep.entries.push_back(fit_decay("linf_v", t, linf));
  return rep;
}

DiagnosticsRecord make_record(const SimState& s, const ModelParams& params,
                              const DiagnosticReference& ref, const ProbeWindow& window,
                              double flux_res, double flux_res_wave) {
  const GridSpec& g = s.grid();
  DiagnosticsRecord r;
  r.t = s.t;
  r.sigma = std::min(1.0, s.t);
  const Field du = s.u - ref.u_field(g, s.t);
  const Field dv = s.v - ref.v_field(g, s.t);
  r.sup_u_err = lp_norm(du, kInfNorm);
  for (std::size_t k = 0; k < kTrackedExponents.size(); ++k) {
    r.lp_v_err[k] = lp_norm(dv, kTrackedExponents[k]);
  }
  r.linf_v_err = lp_norm(dv, kInfNorm);
  r.entropy = entropy(s.u);
  r.a_func = a_functional(s.u, s.v);
  r.b_func = ab_functionals(s.u).b;
  r.flux_identity_residual = flux_res;
  r.flux_identity_residual_wave = flux_res_wave;
  r.mass_u = integral(s.u);
  r.mass_v = integral(s.v);
  const ProbeResult probe = regularity_probe(s.v, window.center, window.halfwidth);
  r.max_diff_quotient_v = probe.max_quotient;
  r.dq_width = probe.width;
  r.front_position = front_position(s.u);
  r.free_energy = r.entropy + 0.5 * params.chi * squared_l2(s.v);
  return r;
}

DiagnosticsRecorder::DiagnosticsRecorder(ModelParams params, DiagnosticReference ref,
                                         ProbeWindow window)
    : params_(params), ref_(std::move(ref)), window_(window) {}

DiagnosticSinks DiagnosticsRecorder::sinks() {
  return DiagnosticSinks{
      [this](const SimState& s, std::size_t) { on_snapshot(s); },
      [this](const SimState& prev, const SimState& next) { on_step(prev, next); }};
}

void DiagnosticsRecorder::on_step(const SimState& prev, const SimState&) {
  if (last_prev_) {
    last_prev_->u = prev.u;
    last_prev_->v = prev.v;
    last_prev_->t = prev.t;
    last_prev_->step_count = prev.step_count;
  } else {
    last_prev_ = prev;
  }
}

void DiagnosticsRecorder::on_snapshot(const SimState& state) {
  double res = 0.0;
  double res_wave = 0.0;
  if (last_prev_ && state.t > last_prev_->t) {
    res = flux_identity_residual(*last_prev_, state, params_);
    if (ref_.wave) res_wave = flux_identity_residual_wave(*last_prev_, state, params_, *ref_.wave, ref_.x0);
  }
  records_.push_back(make_record(state, params_, ref_, window_, res, res_wave));
}

void write_series_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
  os << kSeriesHeader << '\n';
  char buf[64];
  auto put = [&](double x, bool last = false) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << (last ? '\n' : ',');
  };
  for (const auto& r : records) {
    put(r.t);
    put(r.sigma);
    put(r.sup_u_err);
    put(r.lp_v_err[0]);
    put(r.lp_v_err[1]);
    put(r.lp_v_err[2]);
    put(r.entropy);
    put(r.a_func);
    put(r.b_func);
    put(r.flux_identity_residual);
    put(r.mass_u);
    put(r.mass_v);
    put(r.max_diff_quotient_v);
    put(r.dq_width);
    put(r.front_position, true);
  }
}

}  // namespace chemowave
