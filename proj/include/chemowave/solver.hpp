#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <span>
#include <string>
#include <vector>

#include "chemowave/grid.hpp"
#include "chemowave/kernels.hpp"
#include "chemowave/params.hpp"

namespace chemowave {

/// Evolving pair (u, v) at time t.
struct SimState {
  Field u;
  Field v;
  double t = 0.0;
  std::size_t step_count = 0;
  double last_dt = 0.0;  ///< size of the step that produced this state (0 for initial data)

  SimState(Field u_in, Field v_in, double t_in = 0.0);
  const GridSpec& grid() const { return u.grid(); }
};

/// Dirichlet value of (u, v) at one end of the interval.
struct BoundaryValues {
  double u = 1.0;
  double v = 0.0;
};

struct SchemeConfig {
  double cfl = 0.4;              ///< advective CFL number, in (0, 1]
  double diffusion_theta = 0.5;  ///< 0.5 Crank-Nicolson ... 1 backward Euler
  double t_end = 1.0;
  double snapshot_interval = 1.0;
  BoundaryValues left;
  BoundaryValues right;
  ExecPolicy policy = ExecPolicy::serial;

  /// Throws ConfigError on out-of-range entries.
  void validate() const;
  /// Boundary pair taken from the end nodes of a state.
  static SchemeConfig with_boundaries_of(const SimState& state, SchemeConfig base);
};

/// Spectral radius bound of the inviscid Jacobian [[-chi v, -chi u], [-1, 0]]
/// over all nodes. Requires u >= 0 (negative u is clamped to 0).
double characteristic_speed_bound(const SimState& state, const ModelParams& params);

/// Thomas algorithm; `lower[0]` and `upper[n-1]` are ignored. Throws
/// NumericalError on a zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// One IMEX step: theta-scheme diffusion for u with explicit central flux
/// chi (u v)_x at level n, then v^{n+1} = v^n + dt D0 u^{n+1}. Boundary nodes
/// are pinned. dt = cfl dx / speed bound, capped by `max_dt` when given.
/// Throws UsageError if the state disagrees with the boundary values by more
/// than 1e-8, NumericalError on NaN.
SimState step(const SimState& state, const ModelParams& params, const SchemeConfig& cfg,
              std::optional<double> max_dt = std::nullopt);

/// Trapezoid-compatible boundary flux of u: the per-step change of
/// integral(v) equals dt times this value exactly (up to rounding).
double discrete_boundary_flux(const Field& u);

/// Location where u crosses the midpoint of its end values, linearly
/// interpolated. With equal end values, the location of max |u - u_end|.
double front_position(const Field& u);

/// Callbacks invoked by run(). Both are optional.
struct DiagnosticSinks {
  std::function<void(const SimState& state, std::size_t snapshot_index)> on_snapshot;
  std::function<void(const SimState& prev, const SimState& next)> on_step;
};

struct RunReport {
  explicit RunReport(SimState initial) : final_state(std::move(initial)) {}

  SimState final_state;
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  std::size_t snapshots = 0;
  double min_u = 0.0;
  bool positivity_violated = false;
  std::vector<double> snapshot_times;
  std::vector<double> front_positions;
  std::optional<std::string> boundary_warning;
  std::vector<std::string> events;
};

/// Steps until t_end, emitting a snapshot at every multiple of
/// snapshot_interval (and at t_end). Nonpositive u is flagged in the report
/// events, never clipped.
RunReport run(const SimState& initial, const ModelParams& params, const SchemeConfig& cfg,
              const DiagnosticSinks& sinks = {});

}  // namespace chemowave
