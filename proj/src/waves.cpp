#include "chemowave/waves.hpp"

#include <algorithm>
#include <cmath>

#include "chemowave/errors.hpp"

namespace chemowave {

double RHResidual::max_abs() const { return std::max(std::abs(r1), std::abs(r2)); }

double TravelingWave::U(double z) const {
  const double jump = states.u_minus - states.u_plus;
  if (jump == 0.0) return states.u_plus;
  // 1 / (1 + e^{lambda z}) written to avoid overflow on either side.
  const double a = lambda * z;
  const double logistic = a > 0.0 ? std::exp(-a) / (1.0 + std::exp(-a)) : 1.0 / (1.0 + std::exp(a));
  return states.u_plus + jump * logistic;
}

double TravelingWave::V(double z) const {
  if (states.u_minus == states.u_plus) return states.v_plus;
  return (kappa - U(z)) / s;
}

double TravelingWave::dU(double z) const {
  const double jump = states.u_minus - states.u_plus;
  if (jump == 0.0) return 0.0;
  const double e = std::exp(-lambda * std::abs(z));
  return -jump * lambda * e / ((1.0 + e) * (1.0 + e));
}

double TravelingWave::U_antiderivative(double z) const {
  const double jump = states.u_minus - states.u_plus;
  if (jump == 0.0) return states.u_plus * z;
  // d/dz [-(1/lambda) ln(1 + e^{-lambda z})] = 1 / (1 + e^{lambda z}).
  const double a = -lambda * z;
  const double softplus = a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
  return states.u_plus * z - jump * softplus / lambda;
}

double TravelingWave::max_abs_dV() const {
  if (states.u_minus == states.u_plus) return 0.0;
  return lambda * (states.u_minus - states.u_plus) / (4.0 * s);
}

double wave_speed(const AsymptoticStates& states, const ModelParams& params) {
  if (!(states.u_minus > 0.0)) throw DomainError("wave_speed: u_minus must be positive");
  const double cv = params.chi * states.v_plus;
  const double disc = std::sqrt(cv * cv + 4.0 * params.chi * states.u_minus);
  // Cancellation-free form of (-cv + disc) / 2 when cv > 0.
  return cv > 0.0 ? 2.0 * params.chi * states.u_minus / (cv + disc) : 0.5 * (disc - cv);
}

RHResidual rh_residual(const AsymptoticStates& st, double s, const ModelParams& params) {
  return RHResidual{
      -s * (st.u_plus - st.u_minus) - params.chi * (st.u_plus * st.v_plus - st.u_minus * st.v_minus),
      -s * (st.v_plus - st.v_minus) - (st.u_plus - st.u_minus)};
}

AsymptoticStates complete_states(double u_minus, double u_plus, double v_plus,
                                 const ModelParams& params) {
  if (!(u_minus > u_plus && u_plus > 0.0)) {
    throw DomainError("complete_states: need u_minus > u_plus > 0");
  }
  AsymptoticStates st{u_minus, u_plus, 0.0, v_plus};
  const double s = wave_speed(st, params);
  st.v_minus = v_plus + (u_plus - u_minus) / s;
  return st;
}

TravelingWave make_wave(const AsymptoticStates& states, const ModelParams& params) {
  TravelingWave w;
  w.states = states;
  w.params = params;
  if (states.is_constant()) {
    w.s = states.u_minus > 0.0 ? wave_speed(states, params) : 0.0;
    w.kappa = states.u_minus + w.s * states.v_minus;
    return w;
  }
  if (!states.is_shock()) throw DomainError("make_wave: need u_minus > u_plus > 0");
  w.s = wave_speed(states, params);
  const RHResidual r = rh_residual(states, w.s, params);
  if (r.max_abs() > 1e-10) {
    throw DomainError("make_wave: states violate the Rankine-Hugoniot conditions");
  }
  w.lambda = params.chi * (states.u_minus - states.u_plus) / (params.D * w.s);
  w.kappa = states.u_minus + w.s * states.v_minus;
  return w;
}

bool profile_bounds_check(const TravelingWave& w, std::span<const double> z_samples) {
  return profile_bounds_check(
      w, z_samples, [&w](double z) { return w.U(z); }, [&w](double z) { return w.V(z); });
}

bool profile_bounds_check(const TravelingWave& w, std::span<const double> z_samples,
                          const std::function<double(double)>& U,
                          const std::function<double(double)>& V) {
  constexpr double h = 1e-6;
  const double jump = w.states.u_minus - w.states.u_plus;
  if (jump == 0.0) return true;
  const double bound_u = w.lambda * jump;
  const double bound_v = bound_u / w.s;
  // Slack for the O(h^2) truncation and O(eps/h) rounding of the difference quotient.
  const double slack = 1e-8 * (1.0 + bound_u);
  for (double z : z_samples) {
    const double du = (U(z + h) - U(z - h)) / (2.0 * h);
    const double dv = (V(z + h) - V(z - h)) / (2.0 * h);
    if (std::abs(du) > bound_u + slack || std::abs(dv) > bound_v + slack / w.s) return false;
  }
  return true;
}

}  // namespace chemowave
