// Serial reference vs OpenMP kernels on grids of increasing size.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "chemowave/grid.hpp"
#include "chemowave/kernels.hpp"
#include "chemowave/mollifier.hpp"
#include "chemowave/params.hpp"
#include "chemowave/solver.hpp"

namespace cw = chemowave;

namespace {

struct Data {
  std::vector<double> u, v, out;
  explicit Data(std::size_t n) : u(n), v(n), out(n) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(n);
      u[i] = 1.5 + 0.5 * std::tanh(20.0 * (0.5 - x));
      v[i] = 0.5 - 0.5 * std::tanh(20.0 * (0.5 - x));
    }
  }
};

cw::ExecPolicy policy_of(const benchmark::State& st) {
  return st.range(1) ? cw::ExecPolicy::parallel : cw::ExecPolicy::serial;
}

void BM_ExplicitRhs(benchmark::State& st) {
  Data d(static_cast<std::size_t>(st.range(0)));
  const cw::kernels::ExplicitRhsArgs a{d.u, d.v, 1e-3, 1e-2, 1.0, 1.0};
  for (auto _ : st) {
    cw::kernels::explicit_rhs(policy_of(st), a, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_MaxCharSpeed(benchmark::State& st) {
  Data d(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(cw::kernels::max_char_speed(policy_of(st), d.u, d.v, 1.0));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Mollify(benchmark::State& st) {
  const cw::GridSpec g(0.0, 400.0, static_cast<std::size_t>(st.range(0)));
  const cw::Field f = cw::Field::sample(g, [](double x) { return x < 50.0 ? 2.0 : 1.0; });
  const cw::MollifierSpec spec{2.0};
  for (auto _ : st) benchmark::DoNotOptimize(cw::mollify(f, spec, policy_of(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Step(benchmark::State& st) {
  const cw::GridSpec g(0.0, 400.0, static_cast<std::size_t>(st.range(0)));
  const cw::SimState s(cw::Field::sample(g, [](double x) { return x < 50.0 ? 2.0 : 1.0; }),
                       cw::Field::sample(g, [](double x) { return x < 50.0 ? 0.0 : 1.0; }));
  cw::SchemeConfig cfg;
  cfg.policy = policy_of(st);
  cfg = cw::SchemeConfig::with_boundaries_of(s, cfg);
  const cw::ModelParams p;
  for (auto _ : st) benchmark::DoNotOptimize(cw::step(s, p, cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {4001L, 64001L, 1024001L}) {
    for (long par : {0L, 1L}) b->Args({n, par});
  }
  b->ArgNames({"n", "parallel"});
}

}  // namespace

BENCHMARK(BM_ExplicitRhs)->Apply(sizes);
BENCHMARK(BM_MaxCharSpeed)->Apply(sizes);
BENCHMARK(BM_Mollify)->Apply(sizes);
BENCHMARK(BM_Step)->Apply(sizes);

BENCHMARK_MAIN();
