#include "chemowave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace chemowave {

bool parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

namespace kernels {

namespace {

// Signed loop indices keep older OpenMP runtimes happy.
using Index = std::int64_t;

inline Index ssize(std::span<const double> s) { return static_cast<Index>(s.size()); }

inline double char_speed(double u, double v, double chi) {
  const double cv = chi * v;
  return 0.5 * (std::abs(cv) + std::sqrt(cv * cv + 4.0 * chi * std::max(u, 0.0)));
}

inline double rhs_at(const ExplicitRhsArgs& a, Index i) {
  const auto& u = a.u;
  const auto& v = a.v;
  const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (a.dx * a.dx);
  const double flux = (u[i + 1] * v[i + 1] - u[i - 1] * v[i - 1]) / (2.0 * a.dx);
  return a.dt * (a.diffusivity * lap + a.chi * flux);
}

inline double convolve_at(std::span<const double> in, std::span<const double> w, Index i) {
  // Deviation form: the weights sum to one, so constants pass through exactly.
  const Index n = ssize(in);
  const Index half = ssize(w) - 1;
  const double centre = in[i];
  double acc = 0.0;
  for (Index k = 1; k <= half; ++k) {
    const Index lo = std::max<Index>(i - k, 0);
    const Index hi = std::min<Index>(i + k, n - 1);
    acc += w[k] * ((in[lo] - centre) + (in[hi] - centre));
  }
  return centre + acc;
}

}  // namespace

namespace serial {

void central_interior(std::span<const double> in, std::span<double> out, double dx) {
  const Index n = ssize(in);
  const double inv2h = 1.0 / (2.0 * dx);
  for (Index i = 1; i < n - 1; ++i) out[i] = (in[i + 1] - in[i - 1]) * inv2h;
}

void explicit_rhs(const ExplicitRhsArgs& a, std::span<double> out) {
  const Index n = ssize(a.u);
  for (Index i = 1; i < n - 1; ++i) out[i] = rhs_at(a, i);
}

void advance_v(std::span<double> v, std::span<const double> u, double dt, double dx) {
  const Index n = ssize(u);
  const double c = dt / (2.0 * dx);
  for (Index i = 1; i < n - 1; ++i) v[i] += c * (u[i + 1] - u[i - 1]);
}

double max_char_speed(std::span<const double> u, std::span<const double> v, double chi) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, char_speed(u[i], v[i], chi));
  return m;
}

void convolve_clamped(std::span<const double> in, std::span<const double> half_weights,
                      std::span<double> out) {
  const Index n = ssize(in);
  for (Index i = 0; i < n; ++i) out[i] = convolve_at(in, half_weights, i);
}

}  // namespace serial

namespace parallel {

void central_interior(std::span<const double> in, std::span<double> out, double dx) {
  const Index n = ssize(in);
  const double inv2h = 1.0 / (2.0 * dx);
#pragma omp parallel for schedule(static)
  for (Index i = 1; i < n - 1; ++i) out[i] = (in[i + 1] - in[i - 1]) * inv2h;
}

void explicit_rhs(const ExplicitRhsArgs& a, std::span<double> out) {
  const Index n = ssize(a.u);
#pragma omp parallel for schedule(static)
  for (Index i = 1; i < n - 1; ++i) out[i] = rhs_at(a, i);
}

void advance_v(std::span<double> v, std::span<const double> u, double dt, double dx) {
  const Index n = ssize(u);
  const double c = dt / (2.0 * dx);
#pragma omp parallel for schedule(static)
  for (Index i = 1; i < n - 1; ++i) v[i] += c * (u[i + 1] - u[i - 1]);
}

double max_char_speed(std::span<const double> u, std::span<const double> v, double chi) {
  const Index n = ssize(u);
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (Index i = 0; i < n; ++i) m = std::max(m, char_speed(u[i], v[i], chi));
  return m;
}

void convolve_clamped(std::span<const double> in, std::span<const double> half_weights,
                      std::span<double> out) {
  const Index n = ssize(in);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[i] = convolve_at(in, half_weights, i);
}

}  // namespace parallel

void central_interior(ExecPolicy p, std::span<const double> in, std::span<double> out, double dx) {
  p == ExecPolicy::parallel ? parallel::central_interior(in, out, dx)
                            : serial::central_interior(in, out, dx);
}

void explicit_rhs(ExecPolicy p, const ExplicitRhsArgs& a, std::span<double> out) {
  p == ExecPolicy::parallel ? parallel::explicit_rhs(a, out) : serial::explicit_rhs(a, out);
}

void advance_v(ExecPolicy p, std::span<double> v, std::span<const double> u, double dt, double dx) {
  p == ExecPolicy::parallel ? parallel::advance_v(v, u, dt, dx)
                            : serial::advance_v(v, u, dt, dx);
}

double max_char_speed(ExecPolicy p, std::span<const double> u, std::span<const double> v,
                      double chi) {
  return p == ExecPolicy::parallel ? parallel::max_char_speed(u, v, chi)
                                   : serial::max_char_speed(u, v, chi);
}

void convolve_clamped(ExecPolicy p, std::span<const double> in,
                      std::span<const double> half_weights, std::span<double> out) {
  p == ExecPolicy::parallel ? parallel::convolve_clamped(in, half_weights, out)
                            : serial::convolve_clamped(in, half_weights, out);
}

}  // namespace kernels
}  // namespace chemowave
