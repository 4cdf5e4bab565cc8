#include <benchmark/benchmark.h>

#include <memory>

#include "ymh/fields.hpp"
#include "ymh/painleve.hpp"
#include "ymh/verifier.hpp"

namespace {

std::shared_ptr<const ymh::TranscendentTable> table() {
  static const auto t = std::make_shared<const ymh::TranscendentTable>(ymh::solve_radial(8.0, 1e-8));
  return t;
}

void BM_SolveRadial(benchmark::State& state) {
  ymh::RadialSolveOptions opts;
  opts.integrator = state.range(0) == 0 ? ymh::Integrator::DormandPrince45 : ymh::Integrator::ClassicalRK4;
  for (auto _ : state) benchmark::DoNotOptimize(ymh::solve_radial(8.0, 1e-8, opts).psi0());
  state.SetLabel(ymh::to_string(opts.integrator));
}
BENCHMARK(BM_SolveRadial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FieldGrid(benchmark::State& state) {
  const auto c = ymh::build_poly_ansatz(ymh::parse("2*z1^2 + z2^2 - 4"), table());
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        sum += ymh::gauge_field_norm(c, {-3.0 + 6.0 * i / (n - 1), -3.0 + 6.0 * j / (n - 1)});
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_FieldGrid)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_ResidualsAt(benchmark::State& state) {
  const auto c = ymh::build_poly_ansatz(ymh::parse("z1*(z1 + 2*z2)"), table());
  const ymh::CPoint z{0.3, -1.2};
  const ymh::StencilSpec s{1e-3, state.range(0) == 0 ? ymh::DiffScheme::Central2 : ymh::DiffScheme::Central4};
  for (auto _ : state) benchmark::DoNotOptimize(ymh::residuals_at(c, z, s).max_abs());
}
BENCHMARK(BM_ResidualsAt)->Arg(0)->Arg(1);

void BM_Lift8(benchmark::State& state) {
  const auto c = ymh::build_poly_ansatz(ymh::parse("z1*(z1 + 2*z2)"), table());
  const ymh::Point8 x{0.3, 0.0, 0.1, 0.2, -1.2, 0.0, 0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(ymh::lifted_curvature(c, x, {}));
}
BENCHMARK(BM_Lift8);

}  // namespace

BENCHMARK_MAIN();
