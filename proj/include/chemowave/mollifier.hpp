#pragma once

#include <vector>

#include "chemowave/grid.hpp"
#include "chemowave/kernels.hpp"

namespace chemowave {

struct MollifierSpec {
  double delta = 1.0;  ///< kernel half-width in space units

  /// Throws ConfigError unless delta >= 2 dx of `grid`.
  void validate(const GridSpec& grid) const;
};

/// Discrete bump kernel exp(-1 / (1 - (x/delta)^2)) on |x| < delta, sampled at
/// multiples of dx and normalized so the full symmetric stencil sums to 1.
/// Entry k is the weight at offset +-k.
std::vector<double> mollifier_weights(const GridSpec& grid, const MollifierSpec& spec);

/// Convolution with the discrete kernel; f is extended by its end values.
Field mollify(const Field& f, const MollifierSpec& spec, ExecPolicy policy = ExecPolicy::serial);

}  // namespace chemowave
