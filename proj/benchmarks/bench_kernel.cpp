#include <benchmark/benchmark.h>

#include "macrograph/kernel.hpp"
#include "macrograph/macrofile.hpp"
#include "testlib.hpp"

using namespace macrograph;

namespace {

MacroGraph featurized_random(std::uint64_t seed, int n) {
  FeaturizationScheme scheme;
  scheme.kind = FeaturizationScheme::Kind::OneHot;
  scheme.node_vocab = {"Glc", "Xyl", "Fuc"};
  scheme.edge_vocab = {"b"};
  return featurize(
      testlib::random_macrograph(seed, n, 0.3, scheme.node_vocab, {"b"}),
      scheme, {});
}

}  // namespace

static void BM_PropagationKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MacroGraph g1 = featurized_random(1, n);
  const MacroGraph g2 = featurized_random(2, n);
  const KernelConfig cfg{1.0, LshMetric::L2, 30, 42};
  for (auto _ : state)
    benchmark::DoNotOptimize(propagation_kernel(g1, g2, cfg));
}
BENCHMARK(BM_PropagationKernel)->RangeMultiplier(2)->Range(8, 64);

static void BM_KernelMatrix(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  std::vector<std::string> ids;
  std::vector<MacroGraph> corpus;
  for (int i = 0; i < count; ++i) {
    ids.push_back("g" + std::to_string(i));
    corpus.push_back(featurized_random(i, 12));
  }
  const KernelConfig cfg{1.0, LshMetric::L2, 30, 42};
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_matrix(ids, corpus, cfg));
}
BENCHMARK(BM_KernelMatrix)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
