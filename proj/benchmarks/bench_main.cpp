#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "treebraid/homology.hpp"
#include "treebraid/interaction.hpp"
#include "treebraid/morse.hpp"
#include "treebraid/ring.hpp"

using namespace treebraid;

namespace {

RootedPlaneTree sufficient(const char* name, int n) {
  std::ifstream in(std::string(TREEBRAID_BENCH_DATA) + "/" + name + ".tree");
  std::stringstream ss;
  ss << in.rdbuf();
  auto tree = parse_tree(ss.str()).tree;
  return is_n_sufficient(tree, n) ? tree : subdivide_for(tree, n).tree;
}

void BM_EnumerateCritical(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto tree = sufficient("t0", n);
  for (auto _ : state) {
    std::size_t total = 0;
    for (int m = 0; m <= n; ++m) total += enumerate_critical(tree, n, m).size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_EnumerateCritical)->Arg(4)->Arg(8)->Arg(12);

void BM_IntegralCohomology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto tree = sufficient("y", n);
  for (auto _ : state) benchmark::DoNotOptimize(integral_cohomology(tree, n));
}
BENCHMARK(BM_IntegralCohomology)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PhiBar(benchmark::State& state) {
  const int n = 3;
  auto tree = sufficient("t0", n);
  AbramsModel model(tree, n);
  const auto cells = enumerate_critical(tree, n, 1);
  for (auto _ : state) {
    GradientField field(model);
    for (const auto& c : cells) {
      benchmark::DoNotOptimize(phi_bar(field, MorseCochain(c)));
    }
  }
}
BENCHMARK(BM_PhiBar)->Unit(benchmark::kMillisecond);

void BM_EvaluateProducts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto tree = sufficient("caterpillar_deg4", n);
  const auto gens = enumerate_vnt(tree, n);
  for (auto _ : state) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        if (gens[i].x == gens[j].x) continue;
        benchmark::DoNotOptimize(evaluate_product(tree, n, std::vector<InteractionVertex>{gens[i], gens[j]}));
      }
    }
  }
}
BENCHMARK(BM_EvaluateProducts)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
