#pragma once

namespace chemowave {

/// Coefficients of u_t - chi (u v)_x = D u_xx, v_t - u_x = 0.
/// chi = mu * xi links back to the (u, c) chemotaxis model.
struct ModelParams {
  double D = 1.0;
  double chi = 1.0;
  double mu = 1.0;
  double xi = 1.0;

  /// Throws ConfigError unless every coefficient is finite and positive.
  static ModelParams from_mu_xi(double D, double mu, double xi);
  /// mu defaults to 1, so xi = chi.
  static ModelParams from_chi(double D, double chi, double mu = 1.0);

  void validate() const;
};

/// Far-field values (u, v)(-inf) = (u_minus, v_minus), (u, v)(+inf) = (u_plus, v_plus).
struct AsymptoticStates {
  double u_minus = 1.0;
  double u_plus = 1.0;
  double v_minus = 0.0;
  double v_plus = 0.0;

  bool is_shock() const { return u_minus > u_plus && u_plus > 0.0; }
  bool is_constant() const { return u_minus == u_plus && v_minus == v_plus; }
};

}  // namespace chemowave
