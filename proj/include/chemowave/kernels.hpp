#pragma once

// Data-parallel inner loops of the solver and mollifier. Every kernel has a
// serial reference and an OpenMP variant; both are elementwise (no
// floating-point reductions except max), so they agree bit for bit.

#include <span>

namespace chemowave {

enum class ExecPolicy { serial, parallel };

/// True when the library was built with OpenMP.
bool parallel_available();

namespace kernels {

/// Inputs to the explicit increment of the theta-scheme for u.
struct ExplicitRhsArgs {
  std::span<const double> u;
  std::span<const double> v;
  double dt = 0.0;
  double dx = 1.0;
  double diffusivity = 1.0;
  double chi = 1.0;
};

namespace serial {
/// out[i] = (in[i+1] - in[i-1]) / (2 dx) for interior nodes; ends untouched.
void central_interior(std::span<const double> in, std::span<double> out, double dx);
/// out[i] = dt * (D lap(u) + chi D0(u v)) at interior nodes; ends untouched.
void explicit_rhs(const ExplicitRhsArgs& a, std::span<double> out);
/// v[i] += dt * D0(u)[i] at interior nodes.
void advance_v(std::span<double> v, std::span<const double> u, double dt, double dx);
/// max_i (chi |v_i| + sqrt(chi^2 v_i^2 + 4 chi max(u_i, 0))) / 2
double max_char_speed(std::span<const double> u, std::span<const double> v, double chi);
/// Symmetric convolution with half-width weights.size()-1, constant extension at the ends.
void convolve_clamped(std::span<const double> in, std::span<const double> half_weights,
                      std::span<double> out);
}  // namespace serial

namespace parallel {
void central_interior(std::span<const double> in, std::span<double> out, double dx);
void explicit_rhs(const ExplicitRhsArgs& a, std::span<double> out);
void advance_v(std::span<double> v, std::span<const double> u, double dt, double dx);
double max_char_speed(std::span<const double> u, std::span<const double> v, double chi);
void convolve_clamped(std::span<const double> in, std::span<const double> half_weights,
                      std::span<double> out);
}  // namespace parallel

void central_interior(ExecPolicy p, std::span<const double> in, std::span<double> out, double dx);
void explicit_rhs(ExecPolicy p, const ExplicitRhsArgs& a, std::span<double> out);
void advance_v(ExecPolicy p, std::span<double> v, std::span<const double> u, double dt, double dx);
double max_char_speed(ExecPolicy p, std::span<const double> u, std::span<const double> v,
                      double chi);
void convolve_clamped(ExecPolicy p, std::span<const double> in,
                      std::span<const double> half_weights, std::span<double> out);

}  // namespace kernels
}  // namespace chemowave
