#pragma once

#include <cstddef>

#include "chemowave/grid.hpp"

namespace chemowave {

/// Cell density u and chemical concentration c > 0 of the original model
/// c_t = -mu u c.
struct ChemotaxisState {
  Field u;
  Field c;
  double t = 0.0;
};

/// v = -(1/mu) (ln c)_x, with ln c taken nodewise before differencing.
/// Throws DomainError naming the first node with c <= 0, or if mu <= 0.
Field to_v(const Field& c, double mu);

/// Same map via the quotient form -(1/mu) c_x / c. Kept for cross-checks.
Field to_v_quotient(const Field& c, double mu);

/// Inverse map anchored at node `x_ref_index`:
/// c(x_i) = c_ref exp(-mu * int_{x_ref}^{x_i} v dy), cumulative trapezoid.
Field from_v(const Field& v, double mu, double c_ref, std::size_t x_ref_index);

}  // namespace chemowave
