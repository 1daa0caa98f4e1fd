#include "chemowave/params.hpp"

#include <cmath>

#include "chemowave/errors.hpp"

namespace chemowave {

namespace {
bool positive(double x) { return std::isfinite(x) && x > 0.0; }
}  // namespace

ModelParams ModelParams::from_mu_xi(double D, double mu, double xi) {
  ModelParams p{D, mu * xi, mu, xi};
  p.validate();
  return p;
}

ModelParams ModelParams::from_chi(double D, double chi, double mu) {
  ModelParams p{D, chi, mu, chi / mu};
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (!positive(D)) throw ConfigError("model: D must be positive");
  if (!positive(chi)) throw ConfigError("model: chi must be positive");
  if (!positive(mu)) throw ConfigError("model: mu must be positive");
  if (!positive(xi)) throw ConfigError("model: xi must be positive");
  if (std::abs(chi - mu * xi) > 1e-12 * std::abs(chi)) {
    throw ConfigError("model: chi must equal mu * xi");
  }
}

}  // namespace chemowave
