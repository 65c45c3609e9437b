#include <benchmark/benchmark.h>

#include "macrograph/ged.hpp"
#include "testlib.hpp"

using namespace macrograph;

static void BM_GedFamily(benchmark::State& state) {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const LabelDistance node_dist = testlib::injected_node_distance();
  const LabelDistance edge_dist = testlib::zero_edge_distance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ged_exact(fam.L, fam.B_glc_xyl_fuc, {3.0, 3.0, 3.0}, node_dist, edge_dist)
            .distance);
  }
}
BENCHMARK(BM_GedFamily);

static void BM_GedRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<std::string> vocab = {"Glc", "Xyl", "Fuc"};
  const MacroGraph g1 = testlib::random_macrograph(1, n, 0.3, vocab, {"b"});
  const MacroGraph g2 = testlib::random_macrograph(2, n, 0.3, vocab, {"b"});
  const LabelDistance node_dist = testlib::injected_node_distance();
  const LabelDistance edge_dist = uniform_label_distance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ged_exact(g1, g2, {1.0, 1.0, 1.0}, node_dist, edge_dist, n).distance);
  }
}
BENCHMARK(BM_GedRandom)->DenseRange(4, 10, 2);

BENCHMARK_MAIN();
