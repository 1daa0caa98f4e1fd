#include "chemowave/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "chemowave/cole_hopf.hpp"
#include "chemowave/errors.hpp"
#include "chemowave/mollifier.hpp"
#include "chemowave/snapshot.hpp"

namespace chemowave {

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt(xs[i]);
  return out.empty() ? "none" : out;
}

// Nodal indicator of [a, b] with half weight on the end nodes.
Field block(const GridSpec& g, double a, double b) {
  const std::size_t ia = g.nearest_node(a);
  const std::size_t ib = g.nearest_node(b);
  Field f(g);
  if (ib <= ia) return f;
  for (std::size_t i = ia; i <= ib; ++i) f[i] = (i == ia || i == ib) ? 0.5 : 1.0;
  return f;
}

// +1 on [a, m], -1 on [m, b], rescaled on the negative lobe so the trapezoid
// mass is zero.
Field zero_mass_dipole(const GridSpec& g, double a, double b) {
  const double m = 0.5 * (a + b);
  Field pos = block(g, a, m);
  Field neg = block(g, m, b);
  const double mp = integral(pos);
  const double mn = integral(neg);
  if (!(mp > 0.0 && mn > 0.0)) throw ConfigError("zero-mass bump is narrower than the grid spacing");
  return pos - (mp / mn) * neg;
}

}  // namespace

SimState build_initial(const ScenarioConfig& cfg) {
  const GridSpec& g = cfg.grid;
  const InitialSpec& in = cfg.initial;
  Field u(g), v(g);

  switch (in.kind) {
    case InitialKind::piecewise_constant: {
      const std::size_t k = g.nearest_node(in.at("jump_at"));
      const double ul = in.at("u_left"), ur = in.at("u_right");
      const double vl = in.at("v_left"), vr = in.at("v_right");
      for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        u[i] = i < k ? ul : i > k ? ur : 0.5 * (ul + ur);
        v[i] = i < k ? vl : i > k ? vr : 0.5 * (vl + vr);
      }
      break;
    }
    case InitialKind::ramp_h1: {
      const double a = in.at("ramp_start"), b = in.at("ramp_end");
      if (!(b > a)) throw ConfigError("ramp_h1: need ramp_end > ramp_start");
      const double ul = in.at("u_left"), ur = in.at("u_right");
      const double vl = in.at("v_left"), vr = in.at("v_right");
      for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        const double x = g.x(i);
        const double r = x <= a ? 0.0 : x >= b ? 1.0 : (x - a) / (b - a);
        u[i] = ul + (ur - ul) * r;
        v[i] = vl + (vr - vl) * r;
      }
      break;
    }
    case InitialKind::exact_wave_plus_bump: {
      if (!cfg.declared_states) throw ConfigError("exact_wave_plus_bump needs a [states] section");
      TravelingWave w;
      try {
        w = make_wave(*cfg.declared_states, cfg.params);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("exact_wave_plus_bump: ") + e.what());
      }
      const double c = in.at("center");
      u = Field::sample(g, [&](double x) { return w.U(x - c); });
      v = Field::sample(g, [&](double x) { return w.V(x - c); });
      const double a = in.at("bump_start", c), b = in.at("bump_end", c);
      if (b > a) {
        const Field shape = in.at("zero_mass", 1.0) != 0.0 ? zero_mass_dipole(g, a, b) : block(g, a, b);
        u += in.at("u_bump", 0.0) * shape;
        v += in.at("v_bump", 0.0) * shape;
      }
      break;
    }
    case InitialKind::constant_plus_jump: {
      const Field blk = block(g, in.at("block_start"), in.at("block_end"));
      u = Field(g, in.at("u_base", 1.0)) + in.at("u_jump", 0.0) * blk;
      v = Field(g, in.at("v_base", 0.0)) + in.at("v_jump", 0.0) * blk;
      break;
    }
    case InitialKind::from_file: {
      SimState s = read_snapshot(in.file, g);
      u = std::move(s.u);
      v = std::move(s.v);
      break;
    }
  }

  if (cfg.mollify_delta > 0.0) {
    const MollifierSpec spec{cfg.mollify_delta};
    u = mollify(u, spec, cfg.scheme.policy);
    v = mollify(v, spec, cfg.scheme.policy);
  }

  if (!u.all_finite() || !v.all_finite()) throw ConfigError("initial data is not finite");
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    if (!(u[i] > 0.0)) {
      throw ConfigError("initial u must be positive; u0(" + fmt(g.x(i)) + ") = " + fmt(u[i]));
    }
  }
  if (cfg.boundary) {
    const auto& [l, r] = *cfg.boundary;
    constexpr double tol = 1e-8;
    if (std::abs(u.front() - l.u) > tol || std::abs(v.front() - l.v) > tol ||
        std::abs(u.back() - r.u) > tol || std::abs(v.back() - r.v) > tol) {
      throw ConfigError("initial data does not match the [boundary] values");
    }
  }
  return SimState(std::move(u), std::move(v), 0.0);
}

ScenarioReference derive_reference(const ScenarioConfig& cfg, const SimState& initial) {
  ScenarioReference out;
  std::optional<TravelingWave> wave;
  if (cfg.initial.kind == InitialKind::exact_wave_plus_bump) {
    wave = make_wave(*cfg.declared_states, cfg.params);
    out.far_field = cfg.declared_states.value();
  } else {
    const AsymptoticStates ff{initial.u.front(), initial.u.back(), initial.v.front(), initial.v.back()};
    out.far_field = ff;
    const double scale = std::max(1.0, std::abs(ff.u_minus));
    if (std::abs(ff.u_minus - ff.u_plus) <= 1e-12 * scale) {
      if (std::abs(ff.v_minus - ff.v_plus) > 1e-12 * std::max(1.0, std::abs(ff.v_minus))) {
        throw ConfigError("equal far-field u with different far-field v: no traveling wave connects them");
      }
      out.reference = DiagnosticReference::constant(ff.u_minus, ff.v_minus);
      return out;
    }
    if (!(ff.u_minus > ff.u_plus && ff.u_plus > 0.0)) {
      throw ConfigError("far-field states need u_left > u_right > 0 for a monotone shock");
    }
    wave = make_wave(complete_states(ff.u_minus, ff.u_plus, ff.v_plus, cfg.params), cfg.params);
    out.v_minus_mismatch = ff.v_minus - wave->states.v_minus;
  }
  out.wave = wave;
  out.far_field_rh = rh_residual(out.far_field, wave->s, cfg.params);
  out.shift = shift_x0(initial.u, initial.v, *wave);
  out.reference = DiagnosticReference::shifted_wave(*wave, out.shift->x0);
  out.perturbation = antiderivatives(initial.u, initial.v, *wave, out.shift->x0, 0.0);
  return out;
}

ProbeWindow default_probe_window(const ScenarioConfig& cfg) {
  if (cfg.probe) return *cfg.probe;
  const InitialSpec& in = cfg.initial;
  const double mid = 0.5 * (cfg.grid.x_min() + cfg.grid.x_max());
  double center = mid;
  switch (in.kind) {
    case InitialKind::piecewise_constant: center = in.at("jump_at"); break;
    case InitialKind::ramp_h1: center = 0.5 * (in.at("ramp_start") + in.at("ramp_end")); break;
    case InitialKind::exact_wave_plus_bump:
      center = 0.5 * (in.at("bump_start", in.at("center")) + in.at("bump_end", in.at("center")));
      break;
    case InitialKind::constant_plus_jump: center = 0.5 * (in.at("block_start") + in.at("block_end")); break;
    case InitialKind::from_file: break;
  }
  const double hw = std::min({5.0, center - cfg.grid.x_min(), cfg.grid.x_max() - center});
  return ProbeWindow{center, hw > 0.0 ? hw : cfg.grid.dx()};
}

RHResidual declared_rh_residual(const ScenarioConfig& cfg) {
  const AsymptoticStates& st = cfg.declared_states.value();
  return rh_residual(st, wave_speed(st, cfg.params), cfg.params);
}

const std::string& ScenarioResult::value(const std::string& key) const {
  for (const auto& [k, v] : manifest) {
    if (k == key) return v;
  }
  throw UsageError("manifest has no key " + key);
}

const std::vector<std::string>& manifest_required_keys() {
  static const std::vector<std::string> keys{
      "name", "seed_label", "grid.x_min", "grid.x_max", "grid.n_nodes", "model.D", "model.chi",
      "model.mu", "model.xi", "scheme.cfl", "scheme.theta", "scheme.t_end",
      "scheme.snapshot_interval", "initial.kind", "mollify_delta",
      "declared.present", "declared.rh_r1", "declared.rh_r2", "declared.rh_consistent",
      "far_field.u_minus", "far_field.u_plus", "far_field.v_minus", "far_field.v_plus",
      "wave.kind", "wave.s", "wave.lambda", "wave.v_minus", "wave.kappa", "wave.rh_r1",
      "wave.rh_r2", "wave.v_minus_mismatch", "shift.x0", "shift.beta_residual",
      "perturbation.phi_end", "perturbation.psi_end",
      "run.steps", "run.snapshots", "run.final_t", "run.min_u", "run.positivity_violated",
      "run.boundary_warning", "run.front_speed_estimate", "run.wall_seconds", "run.events",
      "decay.available",
      "decay.sup_u_err.initial", "decay.sup_u_err.final", "decay.sup_u_err.tail_slope", "decay.sup_u_err.decayed",
      "decay.l2_v.initial", "decay.l2_v.final", "decay.l2_v.tail_slope", "decay.l2_v.decayed",
      "decay.l4_v.initial", "decay.l4_v.final", "decay.l4_v.tail_slope", "decay.l4_v.decayed",
      "decay.l6_v.initial", "decay.l6_v.final", "decay.l6_v.tail_slope", "decay.l6_v.decayed",
      "decay.linf_v.initial", "decay.linf_v.final", "decay.linf_v.tail_slope", "decay.linf_v.decayed",
      "probe.center", "probe.halfwidth", "probe.times", "probe.max_dq_v", "probe.dq_width",
      "probe.max_dq_v_peak", "probe.reference_max_dq_v", "probe.min_ratio_to_reference",
      "probe.max_ratio_to_reference",
      "series.flux_res_wave", "series.free_energy"};
  return keys;
}

namespace {

double tail_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t start = t.size() / 2;
  if (t.size() - start < 2) return std::numeric_limits<double>::quiet_NaN();
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double m = static_cast<double>(t.size() - start);
  for (std::size_t i = start; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  return (m * sty - st * sy) / (m * stt - st * st);
}

std::vector<double> run_reference_probe(const ScenarioConfig& cfg, const ScenarioReference& ref,
                                        const ProbeWindow& window) {
  const TravelingWave& w = *ref.wave;
  const double x0 = ref.shift->x0;
  SimState init(Field::sample(cfg.grid, [&](double x) { return w.U(x + x0); }),
                Field::sample(cfg.grid, [&](double x) { return w.V(x + x0); }));
  const SchemeConfig scheme = SchemeConfig::with_boundaries_of(init, cfg.scheme);
  std::vector<double> probe;
  DiagnosticSinks sinks;
  sinks.on_snapshot = [&](const SimState& s, std::size_t) {
    probe.push_back(regularity_probe(s.v, window.center, window.halfwidth).max_quotient);
  };
  run(init, cfg.params, scheme, sinks);
  return probe;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& m) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "# chemowave scenario manifest\n";
  for (const auto& [k, v] : m) os << k << " = " << v << '\n';
  if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                            const RunOptions& options) {
  const SimState initial = build_initial(cfg);
  ScenarioResult res(cfg, derive_reference(cfg, initial), RunReport(initial));
  const ProbeWindow window = default_probe_window(cfg);
  const SchemeConfig scheme = SchemeConfig::with_boundaries_of(initial, cfg.scheme);

  if (options.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  }

  DiagnosticsRecorder recorder(cfg.params, res.reference.reference, window);
  DiagnosticSinks sinks = recorder.sinks();
  if (options.write_files) {
    auto record_snapshot = sinks.on_snapshot;
    sinks.on_snapshot = [&, record_snapshot](const SimState& s, std::size_t index) {
      record_snapshot(s, index);
      const auto path = out_dir / ("snap_" + std::to_string(index) + ".dat");
      if (options.emit_c) {
        const Field c = from_v(s.v, cfg.params.mu, options.c_ref, 0);
        write_snapshot(path, s, &c);
      } else {
        write_snapshot(path, s);
      }
    };
  }
  res.report = run(initial, cfg.params, scheme, sinks);
  res.records = recorder.records();
  if (res.records.size() >= 3) res.decay = decay_series(res.records);
  if (cfg.reference_run && res.reference.wave) {
    res.reference_probe = run_reference_probe(cfg, res.reference, window);
  }
  res.front_speed = res.reference.wave
                        ? tail_slope(res.report.snapshot_times, res.report.front_positions)
                        : std::numeric_limits<double>::quiet_NaN();

  // Manifest.
  auto& m = res.manifest;
  m = cfg.echo();
  const bool declared = cfg.declared_states.has_value();
  m.emplace_back("declared.present", declared ? "true" : "false");
  if (declared) {
    const RHResidual r = declared_rh_residual(cfg);
    m.emplace_back("declared.rh_r1", fmt(r.r1));
    m.emplace_back("declared.rh_r2", fmt(r.r2));
    m.emplace_back("declared.rh_consistent", r.max_abs() <= 1e-10 ? "true" : "false");
  } else {
    m.emplace_back("declared.rh_r1", "n/a");
    m.emplace_back("declared.rh_r2", "n/a");
    m.emplace_back("declared.rh_consistent", "n/a");
  }
  const ScenarioReference& ref = res.reference;
  m.emplace_back("far_field.u_minus", fmt(ref.far_field.u_minus));
  m.emplace_back("far_field.u_plus", fmt(ref.far_field.u_plus));
  m.emplace_back("far_field.v_minus", fmt(ref.far_field.v_minus));
  m.emplace_back("far_field.v_plus", fmt(ref.far_field.v_plus));
  if (ref.wave) {
    m.emplace_back("wave.kind", "shock");
    m.emplace_back("wave.s", fmt(ref.wave->s));
    m.emplace_back("wave.lambda", fmt(ref.wave->lambda));
    m.emplace_back("wave.v_minus", fmt(ref.wave->states.v_minus));
    m.emplace_back("wave.kappa", fmt(ref.wave->kappa));
    m.emplace_back("wave.rh_r1", fmt(ref.far_field_rh.r1));
    m.emplace_back("wave.rh_r2", fmt(ref.far_field_rh.r2));
    m.emplace_back("wave.v_minus_mismatch", fmt(ref.v_minus_mismatch));
    m.emplace_back("shift.x0", fmt(ref.shift->x0));
    m.emplace_back("shift.beta_residual", fmt(ref.shift->beta_residual));
    m.emplace_back("perturbation.phi_end", fmt(ref.perturbation->zero_mass_residual[0]));
    m.emplace_back("perturbation.psi_end", fmt(ref.perturbation->zero_mass_residual[1]));
  } else {
    m.emplace_back("wave.kind", "constant");
    for (const char* k : {"wave.s", "wave.lambda", "wave.v_minus", "wave.kappa", "wave.rh_r1",
                          "wave.rh_r2", "wave.v_minus_mismatch", "shift.x0", "shift.beta_residual",
                          "perturbation.phi_end", "perturbation.psi_end"}) {
      m.emplace_back(k, "n/a");
    }
  }
  const RunReport& rep = res.report;
  m.emplace_back("run.steps", std::to_string(rep.steps));
  m.emplace_back("run.snapshots", std::to_string(rep.snapshots));
  m.emplace_back("run.final_t", fmt(rep.final_state.t));
  m.emplace_back("run.min_u", fmt(rep.min_u));
  m.emplace_back("run.positivity_violated", rep.positivity_violated ? "true" : "false");
  m.emplace_back("run.boundary_warning", rep.boundary_warning.value_or("none"));
  m.emplace_back("run.front_speed_estimate", ref.wave ? fmt(res.front_speed) : "n/a");
  m.emplace_back("run.wall_seconds", fmt(rep.wall_seconds));
  std::string events;
  for (const auto& e : rep.events) events += (events.empty() ? "" : "; ") + e;
  m.emplace_back("run.events", events.empty() ? "none" : events);

  m.emplace_back("decay.available", res.decay ? "true" : "false");
  for (const char* name : {"sup_u_err", "l2_v", "l4_v", "l6_v", "linf_v"}) {
    const std::string p = std::string("decay.") + name;
    if (res.decay) {
      const DecayEntry& e = res.decay->at(name);
      m.emplace_back(p + ".initial", fmt(e.initial));
      m.emplace_back(p + ".final", fmt(e.final_value));
      m.emplace_back(p + ".tail_slope", fmt(e.tail_slope));
      m.emplace_back(p + ".decayed", e.decayed ? "true" : "false");
    } else {
      for (const char* f : {".initial", ".final", ".tail_slope", ".decayed"}) m.emplace_back(p + f, "n/a");
    }
  }

  std::vector<double> times, dq, width, flux_wave, free_energy;
  for (const auto& r : res.records) {
    times.push_back(r.t);
    dq.push_back(r.max_diff_quotient_v);
    width.push_back(r.dq_width);
    flux_wave.push_back(r.flux_identity_residual_wave);
    free_energy.push_back(r.free_energy);
  }
  m.emplace_back("probe.center", fmt(window.center));
  m.emplace_back("probe.halfwidth", fmt(window.halfwidth));
  m.emplace_back("probe.times", fmt_list(times));
  m.emplace_back("probe.max_dq_v", fmt_list(dq));
  m.emplace_back("probe.dq_width", fmt_list(width));
  m.emplace_back("probe.max_dq_v_peak", dq.empty() ? "n/a" : fmt(*std::max_element(dq.begin(), dq.end())));
  m.emplace_back("probe.reference_max_dq_v", fmt_list(res.reference_probe));
  if (!res.reference_probe.empty() && res.reference_probe.size() == dq.size()) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < dq.size(); ++i) {
      const double ratio = dq[i] / std::max(res.reference_probe[i], std::numeric_limits<double>::min());
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    m.emplace_back("probe.min_ratio_to_reference", fmt(lo));
    m.emplace_back("probe.max_ratio_to_reference", fmt(hi));
  } else {
    m.emplace_back("probe.min_ratio_to_reference", "n/a");
    m.emplace_back("probe.max_ratio_to_reference", "n/a");
  }
  m.emplace_back("series.flux_res_wave", ref.wave ? fmt_list(flux_wave) : "n/a");
  m.emplace_back("series.free_energy", fmt_list(free_energy));

  if (options.write_files) {
    std::ofstream series(out_dir / "series.csv");
    if (!series) throw IoError("cannot write series.csv in " + out_dir.string());
    write_series_csv(series, res.records);
    write_manifest(out_dir / "manifest.txt", m);
  }
  return res;
}

std::string describe_wave(const ScenarioConfig& cfg) {
  std::ostringstream os;
  if (cfg.declared_states) {
    const AsymptoticStates& st = *cfg.declared_states;
    const double s = wave_speed(st, cfg.params);
    const RHResidual r = rh_residual(st, s, cfg.params);
    os << "declared.u_minus = " << fmt(st.u_minus) << '\n'
       << "declared.u_plus = " << fmt(st.u_plus) << '\n'
       << "declared.v_minus = " << fmt(st.v_minus) << '\n'
       << "declared.v_plus = " << fmt(st.v_plus) << '\n'
       << "declared.s = " << fmt(s) << '\n'
       << "declared.rh_r1 = " << fmt(r.r1) << '\n'
       << "declared.rh_r2 = " << fmt(r.r2) << '\n'
       << "declared.rh_consistent = " << (r.max_abs() <= 1e-10 ? "true" : "false") << '\n';
    if (st.is_shock()) {
      const AsymptoticStates done = complete_states(st.u_minus, st.u_plus, st.v_plus, cfg.params);
      os << "declared.completed_v_minus = " << fmt(done.v_minus) << '\n';
    }
  }
  const SimState initial = build_initial(cfg);
  const ScenarioReference ref = derive_reference(cfg, initial);
  os << "far_field.u_minus = " << fmt(ref.far_field.u_minus) << '\n'
     << "far_field.u_plus = " << fmt(ref.far_field.u_plus) << '\n'
     << "far_field.v_minus = " << fmt(ref.far_field.v_minus) << '\n'
     << "far_field.v_plus = " << fmt(ref.far_field.v_plus) << '\n';
  if (ref.wave) {
    const TravelingWave& w = *ref.wave;
    os << "wave.s = " << fmt(w.s) << '\n'
       << "wave.lambda = " << fmt(w.lambda) << '\n'
       << "wave.v_minus = " << fmt(w.states.v_minus) << '\n'
       << "wave.kappa = " << fmt(w.kappa) << '\n'
       << "wave.rh_r1 = " << fmt(ref.far_field_rh.r1) << '\n'
       << "wave.rh_r2 = " << fmt(ref.far_field_rh.r2) << '\n'
       << "wave.v_minus_mismatch = " << fmt(ref.v_minus_mismatch) << '\n'
       << "shift.x0 = " << fmt(ref.shift->x0) << '\n'
       << "shift.beta_residual = " << fmt(ref.shift->beta_residual) << '\n';
  } else {
    os << "wave.kind = constant\n";
  }
  return os.str();
}

std::vector<SweepEntry> sweep(const ScenarioConfig& base, const std::string& axis,
                              const std::vector<double>& values,
                              const std::filesystem::path& out_dir, unsigned threads,
                              const RunOptions& options) {
  std::vector<SweepEntry> entries(values.size());
  if (values.empty()) return entries;
  {
    ScenarioConfig probe_axis = base;
    probe_axis.apply_axis(axis, values.front());  // rejects unknown axes up front
  }
  if (options.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(values.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepEntry& e = entries[i];
      e.index = i;
      e.value = values[i];
      try {
        ScenarioConfig cfg = base;
        cfg.apply_axis(axis, values[i]);
        cfg.name = base.name + "_" + axis + "_" + std::to_string(i);
        if (threads > 1) cfg.scheme.policy = ExecPolicy::serial;
        e.result = run_scenario(cfg, out_dir / (axis + "_" + std::to_string(i)), options);
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  if (axis == "n_nodes") {
    double prev_diff = 0.0;  // 0 means no usable previous gap
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (!entries[i].result || !entries[i - 1].result) {
        prev_diff = 0.0;
        continue;
      }
      const Field& coarse = entries[i - 1].result->report.final_state.u;
      const Field& fine = entries[i].result->report.final_state.u;
      const std::size_t nc = coarse.size() - 1, nf = fine.size() - 1;
      if (nf % nc != 0) {
        prev_diff = 0.0;
        continue;
      }
      const std::size_t stride = nf / nc;
      Field diff(coarse.grid());
      for (std::size_t k = 0; k <= nc; ++k) diff[k] = fine[k * stride] - coarse[k];
      entries[i].refinement_diff = lp_norm(diff, 2.0);
      if (prev_diff > 0.0 && *entries[i].refinement_diff > 0.0) {
        entries[i].refinement_factor = prev_diff / *entries[i].refinement_diff;
      }
      prev_diff = *entries[i].refinement_diff;
    }
  }

  if (options.write_files) {
    std::ofstream os(out_dir / "sweep.csv");
    if (!os) throw IoError("cannot write sweep.csv in " + out_dir.string());
    os << "index,axis,value,status,t_final,steps,sup_u_err,l2_v,l4_v,l6_v,entropy,max_dq_v,dq_width,"
          "front_pos,min_u,refinement_diff_u_l2,refinement_factor,message\n";
    for (const auto& e : entries) {
      os << e.index << ',' << axis << ',' << fmt(e.value) << ',' << (e.result ? "ok" : "error");
      if (e.result && !e.result->records.empty()) {
        const DiagnosticsRecord& r = e.result->records.back();
        for (double x : {r.t, static_cast<double>(e.result->report.steps), r.sup_u_err, r.lp_v_err[0],
                         r.lp_v_err[1], r.lp_v_err[2], r.entropy, r.max_diff_quotient_v, r.dq_width,
                         r.front_position, e.result->report.min_u}) {
          os << ',' << fmt(x);
        }
      } else {
        for (int k = 0; k < 11; ++k) os << ',';
      }
      os << ',' << (e.refinement_diff ? fmt(*e.refinement_diff) : "");
      os << ',' << (e.refinement_factor ? fmt(*e.refinement_factor) : "");
      std::string msg = e.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      os << ',' << msg << '\n';
    }
  }
  return entries;
}

}  // namespace chemowave
