#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace chemowave {

/// Uniform vertex-centered mesh on [x_min, x_max].
class GridSpec {
 public:
  static constexpr std::size_t kMinNodes = 8;

  /// Throws ConfigError unless x_max > x_min and n_nodes >= kMinNodes.
  GridSpec(double x_min, double x_max, std::size_t n_nodes);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_nodes() const { return n_nodes_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }

  /// Node coordinate, computed from the index (no accumulated drift).
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx_; }

  /// Index of the node nearest to `pos`, clamped to the grid.
  std::size_t nearest_node(double pos) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_nodes_;
  double dx_;
};

/// Nodal scalar data on a GridSpec.
class Field {
 public:
  explicit Field(const GridSpec& grid, double value = 0.0);
  Field(const GridSpec& grid, std::vector<double> values);

  /// Samples fn at every node.
  static Field sample(const GridSpec& grid, const std::function<double(double)>& fn);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  bool all_finite() const;
  /// Throws NumericalError naming the first non-finite node.
  void require_finite(const char* what) const;

  double min() const;
  double max() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double c);

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);
/// Nodewise product.
Field hadamard(const Field& a, const Field& b);

/// p = kInfNorm selects the maximum norm.
inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Second-order central differences, second-order one-sided at both ends.
Field derivative_x(const Field& f);

/// Composite trapezoid rule over the whole grid.
double integral(const Field& f);

/// Running trapezoid integral from the left end: out[0] = 0.
Field cumulative_integral(const Field& f);

/// (integral |f|^p)^(1/p) by trapezoid; max |f| for p = kInfNorm.
/// Throws DomainError for p < 1.
double lp_norm(const Field& f, double p);

}  // namespace chemowave
