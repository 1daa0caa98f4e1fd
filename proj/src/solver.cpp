#include "chemowave/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "chemowave/errors.hpp"

namespace chemowave {

SimState::SimState(Field u_in, Field v_in, double t_in)
    : u(std::move(u_in)), v(std::move(v_in)), t(t_in) {
  if (!(u.grid() == v.grid())) throw UsageError("SimState: u and v live on different grids");
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("scheme: cfl must lie in (0, 1]");
  if (!(diffusion_theta >= 0.5 && diffusion_theta <= 1.0)) {
    throw ConfigError("scheme: theta must lie in [0.5, 1]");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("scheme: t_end must be >= 0");
  if (!(snapshot_interval > 0.0)) throw ConfigError("scheme: snapshot_interval must be positive");
}

SchemeConfig SchemeConfig::with_boundaries_of(const SimState& state, SchemeConfig base) {
  base.left = {state.u.front(), state.v.front()};
  base.right = {state.u.back(), state.v.back()};
  return base;
}

double characteristic_speed_bound(const SimState& state, const ModelParams& params) {
  return kernels::serial::max_char_speed(state.u.values(), state.v.values(), params.chi);
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), d(n), x(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw NumericalError("tridiagonal: zero pivot at row 0");
  c[0] = upper[0] / pivot;
  d[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0) throw NumericalError("tridiagonal: zero pivot at row " + std::to_string(i));
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / pivot;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

namespace {

constexpr double kBoundaryTolerance = 1e-8;
constexpr double kTinySpeed = 1e-12;

void require_boundary_match(const SimState& s, const SchemeConfig& cfg) {
  const bool ok = std::abs(s.u.front() - cfg.left.u) <= kBoundaryTolerance &&
                  std::abs(s.v.front() - cfg.left.v) <= kBoundaryTolerance &&
                  std::abs(s.u.back() - cfg.right.u) <= kBoundaryTolerance &&
                  std::abs(s.v.back() - cfg.right.v) <= kBoundaryTolerance;
  if (!ok) throw UsageError("step: state does not match the Dirichlet boundary values");
}

std::string step_report(const SimState& s, double dt, const char* what) {
  std::ostringstream os;
  os << what << " at step " << s.step_count + 1 << " (t = " << s.t << ", dt = " << dt << ")";
  return os.str();
}

}  // namespace

SimState step(const SimState& state, const ModelParams& params, const SchemeConfig& cfg,
              std::optional<double> max_dt) {
  require_boundary_match(state, cfg);
  const GridSpec& grid = state.grid();
  const std::size_t n = grid.n_nodes();
  const double dx = grid.dx();

  const double speed =
      kernels::max_char_speed(cfg.policy, state.u.values(), state.v.values(), params.chi);
  double dt = cfg.cfl * dx / std::max(speed, kTinySpeed);
  if (max_dt) dt = std::min(dt, *max_dt);
  if (!(dt > 0.0)) throw UsageError("step: non-positive time step");

  // Delta form: (I - theta dt D L) du = dt (D L u + chi D0(u v)), so constant
  // states give du = 0 exactly.
  std::vector<double> rhs(n);
  kernels::explicit_rhs(cfg.policy,
                        {state.u.values(), state.v.values(), dt, dx, params.D, params.chi}, rhs);
  rhs[0] = cfg.left.u - state.u.front();
  rhs[n - 1] = cfg.right.u - state.u.back();

  const double r = cfg.diffusion_theta * dt * params.D / (dx * dx);
  std::vector<double> lower(n, -r), diag(n, 1.0 + 2.0 * r), upper(n, -r);
  diag[0] = diag[n - 1] = 1.0;
  upper[0] = lower[n - 1] = 0.0;

  Field u_next = state.u;
  u_next += Field(grid, solve_tridiagonal(lower, diag, upper, rhs));
  u_next[0] = cfg.left.u;
  u_next[n - 1] = cfg.right.u;

  Field v_next = state.v;
  kernels::advance_v(cfg.policy, v_next.values(), u_next.values(), dt, dx);
  v_next[0] = cfg.left.v;
  v_next[n - 1] = cfg.right.v;

  if (!u_next.all_finite() || !v_next.all_finite()) {
    throw NumericalError(step_report(state, dt, "non-finite value"));
  }

  SimState next(std::move(u_next), std::move(v_next), state.t + dt);
  next.step_count = state.step_count + 1;
  next.last_dt = dt;
  return next;
}

double discrete_boundary_flux(const Field& u) {
  const std::size_t n = u.size();
  return 0.5 * (u[n - 1] + u[n - 2]) - 0.5 * (u[0] + u[1]);
}

double front_position(const Field& u) {
  const GridSpec& g = u.grid();
  const std::size_t n = u.size();
  const double left = u.front();
  const double right = u.back();
  if (left == right) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(u[i] - left) > std::abs(u[best] - left)) best = i;
    }
    return g.x(best);
  }
  const double level = 0.5 * (left + right);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = u[i] - level;
    const double b = u[i + 1] - level;
    if (a == 0.0) return g.x(i);
    if ((a < 0.0) != (b < 0.0)) return g.x(i) + a / (a - b) * g.dx();
  }
  return g.x(n - 1);
}

RunReport run(const SimState& initial, const ModelParams& params, const SchemeConfig& cfg,
              const DiagnosticSinks& sinks) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const GridSpec& grid = initial.grid();

  RunReport report{initial};
  report.min_u = initial.u.min();

  auto flag_positivity = [&report](const SimState& s) {
    const double m = s.u.min();
    report.min_u = std::min(report.min_u, m);
    if (m <= 0.0 && !report.positivity_violated) {
      report.positivity_violated = true;
      std::ostringstream os;
      os << "positivity: min(u) = " << m << " at t = " << s.t << " (step " << s.step_count << ")";
      report.events.push_back(os.str());
    }
  };
  auto emit_snapshot = [&](const SimState& s) {
    if (sinks.on_snapshot) sinks.on_snapshot(s, report.snapshots);
    report.snapshot_times.push_back(s.t);
    report.front_positions.push_back(front_position(s.u));
    ++report.snapshots;
  };

  flag_positivity(initial);
  emit_snapshot(initial);

  const double t0 = initial.t;
  const double t_final = t0 + cfg.t_end;
  std::size_t next_index = 1;
  SimState state = initial;
  // Times within this fraction of a step of a target are snapped onto it.
  const double snap_tol = 1e-9 * std::max(1.0, cfg.t_end);
  while (state.t < t_final - snap_tol) {
    const double next_snap = t0 + static_cast<double>(next_index) * cfg.snapshot_interval;
    const double target = std::min(next_snap, t_final);
    SimState next = step(state, params, cfg, target - state.t);
    if (std::abs(next.t - target) <= snap_tol) next.t = target;
    flag_positivity(next);
    if (sinks.on_step) sinks.on_step(state, next);
    state = std::move(next);
    ++report.steps;
    if (std::abs(state.t - next_snap) <= snap_tol) {
      emit_snapshot(state);
      ++next_index;
    } else if (state.t >= t_final - snap_tol) {
      emit_snapshot(state);
    }
  }

  if (grid.n_nodes() > 0 && initial.u.front() != initial.u.back()) {
    const double margin = 0.1 * grid.length();
    for (std::size_t k = 0; k < report.front_positions.size(); ++k) {
      const double xf = report.front_positions[k];
      if (xf - grid.x_min() < margin || grid.x_max() - xf < margin) {
        std::ostringstream os;
        os << "front at x = " << xf << " (t = " << report.snapshot_times[k]
           << ") is within 10% of the domain length of a boundary";
        report.boundary_warning = os.str();
        break;
      }
    }
  }

  report.final_state = std::move(state);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace chemowave
