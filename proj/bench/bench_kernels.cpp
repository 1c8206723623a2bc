// Serial reference loops against their OpenMP versions. Arg 0 is the serial run, 1 the parallel one.

#include <benchmark/benchmark.h>

#include <vector>

#include "zonoreach/kernels.hpp"
#include "zonoreach/tiling.hpp"

using namespace zonoreach;

namespace {

ExecPolicy policy(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "openmp"); }

// All k-subsets of {0..p-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int p, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == p - k + i) --i;
    if (i < 0) return out;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<Vec> sample(const Zonotope& z, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) pts.push_back(sample_point(z, rng));
  return pts;
}

void BM_hyperplane_candidates(benchmark::State& state) {
  const int n = 6;
  const int p = 18;
  Rng rng(3);
  Mat g(n, p);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = 2.0 * uniform01(rng) - 1.0;
  const auto subs = subsets(p, n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hyperplane_candidates(g, subs, policy(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(subs.size()));
  label(state);
}

void BM_propagate_points(benchmark::State& state) {
  const Benchmark b = zonoreach::benchmark("Tank6");
  const std::vector<Vec> pts = sample(b.x0, 2000, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::propagate_points(b.system, pts, b.h, 1e-9, policy(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
  label(state);
}

void BM_outer_steps(benchmark::State& state) {
  const Benchmark b = zonoreach::benchmark("Rossler");
  const std::vector<Zonotope> pieces = refine_boundary(b.x0, 200);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::outer_steps(b.system, pieces, b.h, OuterParams{}, policy(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pieces.size()));
  label(state);
}

void BM_membership(benchmark::State& state) {
  const Benchmark b = zonoreach::benchmark("Tank6");
  const Zonotope z = outer_step(b.system, b.x0, b.h);
  const std::vector<Vec> pts = sample(Zonotope(z.center(), z.generators() * 1.05), 5000, 9);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::membership(z, pts, 1e-9, policy(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
  label(state);
}

}  // namespace

BENCHMARK(BM_hyperplane_candidates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_propagate_points)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_outer_steps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_membership)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
