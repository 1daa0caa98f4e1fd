#include "chemowave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chemowave/errors.hpp"

namespace chemowave {

GridSpec::GridSpec(double x_min, double x_max, std::size_t n_nodes)
    : x_min_(x_min), x_max_(x_max), n_nodes_(n_nodes), dx_(0.0) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_max > x_min)) {
    throw ConfigError("grid: need finite x_max > x_min");
  }
  if (n_nodes < kMinNodes) {
    throw ConfigError("grid: n_nodes must be at least " + std::to_string(kMinNodes));
  }
  dx_ = (x_max - x_min) / static_cast<double>(n_nodes - 1);
}

std::size_t GridSpec::nearest_node(double pos) const {
  const double r = std::round((pos - x_min_) / dx_);
  if (r <= 0.0) return 0;
  if (r >= static_cast<double>(n_nodes_ - 1)) return n_nodes_ - 1;
  return static_cast<std::size_t>(r);
}

Field::Field(const GridSpec& grid, double value) : grid_(grid), values_(grid.n_nodes(), value) {}

Field::Field(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_nodes()) {
    throw UsageError("field: value count " + std::to_string(values_.size()) +
                     " does not match grid nodes " + std::to_string(grid_.n_nodes()));
  }
}

Field Field::sample(const GridSpec& grid, const std::function<double(double)>& fn) {
  Field f(grid);
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) f.values_[i] = fn(grid.x(i));
  return f;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void Field::require_finite(const char* what) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NumericalError(std::string(what) + ": non-finite value at node " + std::to_string(i) +
                           " (x=" + std::to_string(grid_.x(i)) + ")");
    }
  }
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

namespace {
void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw UsageError("field arithmetic on different grids");
}
}  // namespace

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }

Field hadamard(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Field derivative_x(const Field& f) {
  const std::size_t n = f.size();
  const double inv2h = 1.0 / (2.0 * f.grid().dx());
  Field g(f.grid());
  for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) * inv2h;
  g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return g;
}

double integral(const Field& f) {
  const std::size_t n = f.size();
  double sum = 0.5 * (f[0] + f[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f[i];
  return sum * f.grid().dx();
}

Field cumulative_integral(const Field& f) {
  const double half_h = 0.5 * f.grid().dx();
  Field out(f.grid());
  double acc = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    acc += half_h * (f[i - 1] + f[i]);
    out[i] = acc;
  }
  return out;
}

double lp_norm(const Field& f, double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  Field powered(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) powered[i] = std::pow(std::abs(f[i]), p);
  return std::pow(integral(powered), 1.0 / p);
}

}  // namespace chemowave
