#include "chemowave/mollifier.hpp"

#include <cmath>
#include <string>

#include "chemowave/errors.hpp"

namespace chemowave {

void MollifierSpec::validate(const GridSpec& grid) const {
  if (!(delta >= 2.0 * grid.dx())) {
    throw ConfigError("mollifier: delta = " + std::to_string(delta) +
                      " is below 2 dx = " + std::to_string(2.0 * grid.dx()));
  }
}

std::vector<double> mollifier_weights(const GridSpec& grid, const MollifierSpec& spec) {
  spec.validate(grid);
  const double dx = grid.dx();
  std::vector<double> w{std::exp(-1.0)};
  for (std::size_t k = 1;; ++k) {
    const double r = static_cast<double>(k) * dx / spec.delta;
    if (r >= 1.0) break;
    w.push_back(std::exp(-1.0 / (1.0 - r * r)));
  }
  double mass = w[0];
  for (std::size_t k = 1; k < w.size(); ++k) mass += 2.0 * w[k];
  for (double& x : w) x /= mass;
  return w;
}

Field mollify(const Field& f, const MollifierSpec& spec, ExecPolicy policy) {
  const std::vector<double> w = mollifier_weights(f.grid(), spec);
  Field out(f.grid());
  kernels::convolve_clamped(policy, f.values(), w, out.values());
  return out;
}

}  // namespace chemowave
