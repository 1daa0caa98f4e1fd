#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chemowave/grid.hpp"
#include "chemowave/params.hpp"
#include "chemowave/solver.hpp"
#include "chemowave/waves.hpp"

namespace chemowave {

/// Exponents tracked for ||v - V||_{L^p}.
inline constexpr std::array<double, 3> kTrackedExponents{2.0, 4.0, 6.0};

/// Per-snapshot monitors. Field order follows the series.csv columns.
struct DiagnosticsRecord {
  double t = 0.0;
  double sigma = 0.0;      ///< min(1, t)
  double sup_u_err = 0.0;  ///< sup |u - reference u|
  std::array<double, 3> lp_v_err{};  ///< ||v - reference v||_p for p in kTrackedExponents
  double entropy = 0.0;
  double a_func = 0.0;
  double b_func = 0.0;
  double flux_identity_residual = 0.0;
  double mass_u = 0.0;
  double mass_v = 0.0;
  double max_diff_quotient_v = 0.0;
  double dq_width = 0.0;
  double front_position = 0.0;
  // Not part of series.csv.
  double linf_v_err = 0.0;
  double free_energy = 0.0;  ///< entropy + (chi / 2) ||v||^2
  double flux_identity_residual_wave = 0.0;
};

/// Anti-derivatives of the perturbation from the shifted wave.
struct PerturbationPair {
  Field phi;
  Field psi;
  std::array<double, 2> zero_mass_residual{};  ///< (phi, psi) at the right end
};

struct ShiftResult {
  double x0 = 0.0;
  double beta_residual = 0.0;  ///< integral(v0 - V(. + x0)), the v-mass mismatch
};

struct ProbeResult {
  double max_quotient = 0.0;  ///< max |v_{i+1} - v_i| / dx over the window
  double width = 0.0;         ///< length of sub-intervals exceeding half the max
};

struct ProbeWindow {
  double center = 0.0;
  double halfwidth = 5.0;
};

/// What the solution is compared against: a constant state or a shifted wave
/// (U, V)(x + x0 - s t).
struct DiagnosticReference {
  std::optional<TravelingWave> wave;
  double x0 = 0.0;
  double u_far = 1.0;
  double v_far = 0.0;

  static DiagnosticReference constant(double u, double v);
  static DiagnosticReference shifted_wave(const TravelingWave& w, double x0);

  double u(double x, double t) const;
  double v(double x, double t) const;
  Field u_field(const GridSpec& g, double t) const;
  Field v_field(const GridSpec& g, double t) const;
};

/// integral(u ln u - u + 1). Throws DomainError if any u <= 0.
double entropy(const Field& u);

/// u-only parts of the energy functionals, with w = u - 1:
/// a_u = ||w||^2 + ||2w - w^2||^2 / 8 + ||w||_4^4 / 8,
/// b   = ||w_x||^2 / 2 + ||w_x - |w| w_x||^2 / 2 + ||w |w_x|||^2 / 2.
struct ABFunctionals {
  double a_u = 0.0;
  double b = 0.0;
};
ABFunctionals ab_functionals(const Field& u);

/// a_u + (3/2) ||v||^2.
double a_functional(const Field& u, const Field& v);

/// F = D w_x + chi (w + 1) v with w = u - 1, so that F_x = u_t.
Field effective_flux(const SimState& state, const ModelParams& params);

/// || d/dx F_mid - (u_next - u_prev) / (t_next - t_prev) ||_2, F_mid the mean
/// of F at both states. Throws UsageError unless next.t > prev.t.
double flux_identity_residual(const SimState& prev, const SimState& next,
                              const ModelParams& params);

/// Same identity for the perturbation from the shifted wave:
/// F = D (u - U)_x + chi (u v - U V).
double flux_identity_residual_wave(const SimState& prev, const SimState& next,
                                   const ModelParams& params, const TravelingWave& wave, double x0);

/// Shift x0 making integral(u0 - U(. + x0)) vanish on the grid, and the
/// remaining v-mass mismatch. Throws DomainError for a constant-state wave or
/// when no shift can balance the mass.
ShiftResult shift_x0(const Field& u0, const Field& v0, const TravelingWave& wave);

PerturbationPair antiderivatives(const Field& u, const Field& v, const TravelingWave& wave,
                                 double x0, double t);

/// Throws UsageError when the window leaves the grid.
ProbeResult regularity_probe(const Field& v, double window_center, double window_halfwidth);

/// Tail fit of one tracked quantity.
struct DecayEntry {
  std::string name;
  double initial = 0.0;
  double final_value = 0.0;
  double tail_slope = 0.0;  ///< d log(q) / dt over the last half of records
  bool decayed = false;     ///< final < 0.5 * initial
};

struct DecayReport {
  std::vector<DecayEntry> entries;  ///< sup_u_err, l2_v, l4_v, l6_v, linf_v
  const DecayEntry& at(const std::string& name) const;
};

/// Throws UsageError for fewer than 3 records.
DecayReport decay_series(const std::vector<DiagnosticsRecord>& records);

/// Assembles a record. `flux_res` pairs are computed by the caller.
DiagnosticsRecord make_record(const SimState& state, const ModelParams& params,
                              const DiagnosticReference& ref, const ProbeWindow& window,
                              double flux_res = 0.0, double flux_res_wave = 0.0);

/// Collects records at every snapshot of a run, tracking the step that led
/// to each snapshot for the flux identity.
class DiagnosticsRecorder {
 public:
  DiagnosticsRecorder(ModelParams params, DiagnosticReference ref, ProbeWindow window);

  DiagnosticSinks sinks();
  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  std::vector<DiagnosticsRecord>& records() { return records_; }

 private:
  void on_step(const SimState& prev, const SimState& next);
  void on_snapshot(const SimState& state);

  ModelParams params_;
  DiagnosticReference ref_;
  ProbeWindow window_;
  std::optional<SimState> last_prev_;
  std::vector<DiagnosticsRecord> records_;
};

/// Header line of series.csv.
inline constexpr const char* kSeriesHeader =
    "t,sigma,sup_u_err,l2_v,l4_v,l6_v,entropy,a_func,b_func,flux_res,mass_u,mass_v,max_dq_v,"
    "dq_width,front_pos";

void write_series_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);

}  // namespace chemowave
