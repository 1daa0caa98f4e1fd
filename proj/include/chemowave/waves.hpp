#pragma once

#include <functional>
#include <span>

#include "chemowave/params.hpp"

namespace chemowave {

/// Residuals of the two Rankine-Hugoniot jump conditions.
struct RHResidual {
  double r1 = 0.0;  ///< -s (u+ - u-) - chi (u+ v+ - u- v-)
  double r2 = 0.0;  ///< -s (v+ - v-) - (u+ - u-)

  double max_abs() const;
};

/// Monotone viscous shock (U, V)(x - s t) connecting (u-, v-) to (u+, v+).
///
/// The profile is normalized so that U(0) = (u- + u+) / 2; translations are
/// applied by shifting the argument. A constant-state "wave" (u- = u+,
/// v- = v+) is allowed and has lambda = 0.
struct TravelingWave {
  AsymptoticStates states;
  ModelParams params;
  double s = 0.0;       ///< wave speed
  double lambda = 0.0;  ///< steepness chi (u- - u+) / (D s)
  double kappa = 0.0;   ///< first integral U + s V

  double U(double z) const;
  double V(double z) const;
  /// Closed-form dU/dz.
  double dU(double z) const;
  /// Closed-form antiderivative of U (up to a constant), overflow-safe.
  double U_antiderivative(double z) const;

  /// Steepest |V'| of the profile: lambda (u- - u+) / (4 s).
  double max_abs_dV() const;
};

/// Positive root of s^2 + chi v+ s - chi u- = 0. Throws DomainError if u- <= 0.
double wave_speed(const AsymptoticStates& states, const ModelParams& params);

RHResidual rh_residual(const AsymptoticStates& states, double s, const ModelParams& params);

/// Completes (u-, u+, v+) to a Rankine-Hugoniot consistent quadruple.
/// Requires u- > u+ > 0 (DomainError otherwise).
AsymptoticStates complete_states(double u_minus, double u_plus, double v_plus,
                                 const ModelParams& params);

/// Builds the wave for `states`. Throws DomainError when the states violate
/// the jump conditions by more than 1e-10 or are not an admissible shock
/// (u- > u+ > 0) or constant state.
TravelingWave make_wave(const AsymptoticStates& states, const ModelParams& params);

/// Samples |U'| and |V'| by central differences (h = 1e-6) at each z and
/// checks |U'| <= lambda (u- - u+) and |V'| <= lambda (u- - u+) / s.
bool profile_bounds_check(const TravelingWave& w, std::span<const double> z_samples);

/// Same check against arbitrary profile evaluators (used for fault injection).
bool profile_bounds_check(const TravelingWave& w, std::span<const double> z_samples,
                          const std::function<double(double)>& U,
                          const std::function<double(double)>& V);

}  // namespace chemowave
