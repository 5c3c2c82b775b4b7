#include "curvcone/ansatz.hpp"
#include "curvcone/catalog.hpp"
#include "curvcone/cones.hpp"
#include "curvcone/geometry.hpp"
#include "curvcone/lintensor.hpp"
#include "curvcone/random.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace curvcone;

namespace {

void BM_LocalGeometryTaylor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto chart = sphere_band(n);
  const std::vector<double> x(static_cast<std::size_t>(n), 0.4);
  const auto p = DerivativeProvider::taylor();
  for (auto _ : state) benchmark::DoNotOptimize(LocalGeometry::at(chart, p, x));
}
BENCHMARK(BM_LocalGeometryTaylor)->DenseRange(3, 6);

void BM_LocalGeometryFd4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto chart = sphere_band(n);
  const std::vector<double> x(static_cast<std::size_t>(n), 0.4);
  const auto p = DerivativeProvider::finite_difference(4, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(LocalGeometry::at(chart, p, x));
}
BENCHMARK(BM_LocalGeometryFd4)->DenseRange(3, 6);

void BM_GeneralizedEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  Matrix a(n, n), g = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      a(i, j) = a(j, i) = rng.uniform(-1.0, 1.0);
      if (i != j) g(i, j) = g(j, i) = 0.05 * rng.uniform(-1.0, 1.0);
    }
  const SymForm form(a);
  const MetricValue metric{SymForm(g)};
  for (auto _ : state) benchmark::DoNotOptimize(generalized_eigenvalues(form, metric));
}
BENCHMARK(BM_GeneralizedEigenvalues)->DenseRange(3, 6);

void BM_ConeMargin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ConeSpec cone = ConeSpec::gamma_k(n, 2);
  Rng rng(11);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (auto& x : values) x = rng.uniform(0.1, 1.0);
  const EigenList l(values);
  for (auto _ : state) benchmark::DoNotOptimize(margin(cone, l));
}
BENCHMARK(BM_ConeMargin)->DenseRange(3, 6);

void BM_FindMinN(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto chart = flat_shell(n);
  const Grid grid = make_grid(chart, 5);
  ScalarField r = [](auto x) {
    using std::sqrt;
    return sqrt(squared_norm(x));
  };
  const ScalarField v = normalize_to_band(r, grid, 0.5);
  const AnsatzConfig config = negative_sectional_config(n, v, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(find_min_N(config, chart, grid, 1e4, 1e-6));
}
BENCHMARK(BM_FindMinN)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
