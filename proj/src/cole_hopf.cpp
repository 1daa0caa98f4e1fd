#include "chemowave/cole_hopf.hpp"

#include <cmath>
#include <string>

#include "chemowave/errors.hpp"

namespace chemowave {

namespace {

void require_positive_c(const Field& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] > 0.0)) {
      throw DomainError("cole_hopf: c must be positive, c[" + std::to_string(i) +
                        "] = " + std::to_string(c[i]) + " at x = " + std::to_string(c.grid().x(i)));
    }
  }
}

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) throw DomainError("cole_hopf: mu must be positive");
}

}  // namespace

Field to_v(const Field& c, double mu) {
  require_positive_mu(mu);
  require_positive_c(c);
  Field log_c(c.grid());
  for (std::size_t i = 0; i < c.size(); ++i) log_c[i] = std::log(c[i]);
  return (-1.0 / mu) * derivative_x(log_c);
}

Field to_v_quotient(const Field& c, double mu) {
  require_positive_mu(mu);
  require_positive_c(c);
  Field v = derivative_x(c);
  for (std::size_t i = 0; i < c.size(); ++i) v[i] *= -1.0 / (mu * c[i]);
  return v;
}

Field from_v(const Field& v, double mu, double c_ref, std::size_t x_ref_index) {
  require_positive_mu(mu);
  if (!(c_ref > 0.0)) throw DomainError("from_v: c_ref must be positive");
  if (x_ref_index >= v.size()) throw UsageError("from_v: reference index outside grid");
  const Field cumulative = cumulative_integral(v);
  const double anchor = cumulative[x_ref_index];
  Field c(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) {
    c[i] = i == x_ref_index ? c_ref : c_ref * std::exp(-mu * (cumulative[i] - anchor));
  }
  return c;
}

}  // namespace chemowave
