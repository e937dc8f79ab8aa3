#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "qmirror/config.hpp"
#include "qmirror/grid.hpp"
#include "qmirror/kernels.hpp"

namespace {

using qm::complexd;

qm::InterferometerConfig bench_config() {
  qm::InterferometerConfig c;
  c.wavelength = 0.1;
  c.phase = 0.7;
  c.reflectivity = 0.8;
  c.bounces = 3;
  return c;
}

qm::SpatialGrid bench_grid(int n) { return qm::make_grid(-5.0, 5.0, n); }

std::vector<double> bench_density(const qm::SpatialGrid& g) {
  std::vector<double> d(static_cast<std::size_t>(g.n_points));
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    d[static_cast<std::size_t>(i)] = std::exp(-x * x);
  }
  return d;
}

void amplitude_grid(benchmark::State& state, bool parallel) {
  const auto c = bench_config();
  const auto g = bench_grid(static_cast<int>(state.range(0)));
  std::vector<complexd> al(static_cast<std::size_t>(g.n_points));
  std::vector<complexd> ar(static_cast<std::size_t>(g.n_points));
  for (auto _ : state) {
    if (parallel)
      qm::kernels::amplitude_grid_omp(c, g, al.data(), ar.data());
    else
      qm::kernels::amplitude_grid_serial(c, g, al.data(), ar.data());
    benchmark::DoNotOptimize(al.data());
    benchmark::DoNotOptimize(ar.data());
  }
  state.SetItemsProcessed(state.iterations() * g.n_points);
}

void intensity_projection(benchmark::State& state, bool parallel) {
  const auto c = bench_config();
  const auto g = bench_grid(static_cast<int>(state.range(0)));
  std::vector<complexd> al(static_cast<std::size_t>(g.n_points));
  std::vector<complexd> ar(static_cast<std::size_t>(g.n_points));
  qm::kernels::amplitude_grid_omp(c, g, al.data(), ar.data());
  const auto d = bench_density(g);
  for (auto _ : state) {
    const double v = parallel ? qm::kernels::intensity_projection_omp(g, al.data(), d.data())
                              : qm::kernels::intensity_projection_serial(g, al.data(), d.data());
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * g.n_points);
}

void kernel_scale(benchmark::State& state, bool parallel) {
  const auto c = bench_config();
  const auto g = bench_grid(static_cast<int>(state.range(0)));
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  std::vector<complexd> al(n), ar(n);
  qm::kernels::amplitude_grid_omp(c, g, al.data(), ar.data());
  std::vector<complexd> rho(n * n, complexd(1.0, 0.0));
  for (auto _ : state) {
    if (parallel)
      qm::kernels::scale_by_kernel_omp(rho.data(), al.data(), n);
    else
      qm::kernels::scale_by_kernel_serial(rho.data(), al.data(), n);
    benchmark::DoNotOptimize(rho.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * static_cast<long>(n));
}

void hs_norm(benchmark::State& state, bool parallel) {
  const auto g = bench_grid(static_cast<int>(state.range(0)));
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  std::vector<complexd> rho(n * n, complexd(0.25, -0.125));
  for (auto _ : state) {
    const double v = parallel ? qm::kernels::hs_norm_sq_omp(g, rho.data())
                              : qm::kernels::hs_norm_sq_serial(g, rho.data());
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * static_cast<long>(n));
}

void bm_amplitude_serial(benchmark::State& s) { amplitude_grid(s, false); }
void bm_amplitude_omp(benchmark::State& s) { amplitude_grid(s, true); }
void bm_projection_serial(benchmark::State& s) { intensity_projection(s, false); }
void bm_projection_omp(benchmark::State& s) { intensity_projection(s, true); }
void bm_kernel_scale_serial(benchmark::State& s) { kernel_scale(s, false); }
void bm_kernel_scale_omp(benchmark::State& s) { kernel_scale(s, true); }
void bm_hs_norm_serial(benchmark::State& s) { hs_norm(s, false); }
void bm_hs_norm_omp(benchmark::State& s) { hs_norm(s, true); }

BENCHMARK(bm_amplitude_serial)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(bm_amplitude_omp)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(bm_projection_serial)->Arg(1 << 14)->Arg(1 << 18)->Arg(1 << 21);
BENCHMARK(bm_projection_omp)->Arg(1 << 14)->Arg(1 << 18)->Arg(1 << 21);
BENCHMARK(bm_kernel_scale_serial)->Arg(512)->Arg(2048);
BENCHMARK(bm_kernel_scale_omp)->Arg(512)->Arg(2048);
BENCHMARK(bm_hs_norm_serial)->Arg(512)->Arg(2048);
BENCHMARK(bm_hs_norm_omp)->Arg(512)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
