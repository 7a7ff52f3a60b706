#include <benchmark/benchmark.h>

#include "varspec/cutoff.hpp"
#include "varspec/engine.hpp"
#include "varspec/models.hpp"
#include "varspec/symcore.hpp"

using namespace varspec;

namespace {

void BM_InnerProductIso(benchmark::State& state) {
  const auto deg = static_cast<int>(state.range(0));
  const WaveFunction f(PolyExp(Polynomial::monomial({deg, 0}) + Polynomial::monomial({0, deg}), IsoGaussian{1.2, 2}));
  const WaveFunction g(PolyExp(Polynomial::monomial({2, 2}), IsoGaussian{0.7, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(inner_product(f, g));
}
BENCHMARK(BM_InnerProductIso)->Arg(4)->Arg(12)->Arg(24);

void BM_InnerProductQuartic(benchmark::State& state) {
  const auto deg = static_cast<int>(state.range(0));
  const WaveFunction f(PolyExp(Polynomial::monomial({deg}), Quartic1D{1.3, 0.2}));
  for (auto _ : state) benchmark::DoNotOptimize(inner_product(f, f));
}
BENCHMARK(BM_InnerProductQuartic)->Arg(2)->Arg(10);

void BM_InnerProductCoupled(benchmark::State& state) {
  const double w[] = {0.385, 0.190, 0.126};
  const auto rho = models::x2y2_density(w);
  for (auto _ : state) benchmark::DoNotOptimize(inner_product(rho, rho));
}
BENCHMARK(BM_InnerProductCoupled);

void BM_VarianceSu2(benchmark::State& state) {
  const auto h = models::su2_hamiltonian(2);
  const double w[] = {1.13};
  const auto psi = models::su2_family(2).basis(1, w);
  for (auto _ : state) benchmark::DoNotOptimize(variance_objective(psi, h));
}
BENCHMARK(BM_VarianceSu2);

void BM_SolveTowerAnharmonic(benchmark::State& state) {
  const auto h = models::anharmonic_hamiltonian();
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  engine::SolverConfig cfg;
  cfg.method = state.range(1) == 1 ? engine::Method::Method1 : engine::Method::Method2;
  for (auto _ : state) benchmark::DoNotOptimize(engine::solve_tower(static_cast<std::size_t>(state.range(0)), h, fam, cfg));
}
BENCHMARK(BM_SolveTowerAnharmonic)->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_CutoffAssemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cutoff::assemble(n, cutoff::SignConvention::Repulsive));
}
BENCHMARK(BM_CutoffAssemble)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_CutoffEigen(benchmark::State& state) {
  const auto m = cutoff::assemble(static_cast<std::size_t>(state.range(0)), cutoff::SignConvention::Repulsive);
  for (auto _ : state) benchmark::DoNotOptimize(cutoff::lowest_eigenvalues(m, 5));
}
BENCHMARK(BM_CutoffEigen)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
