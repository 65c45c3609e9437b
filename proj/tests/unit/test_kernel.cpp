#include <doctest.h>

#include <cmath>

#include "macrograph/kernel.hpp"
#include "testlib.hpp"

using namespace macrograph;

namespace {

FeaturizationScheme one_hot_scheme() {
  FeaturizationScheme scheme;
  scheme.kind = FeaturizationScheme::Kind::OneHot;
  scheme.node_vocab = {"Glc", "Xyl", "Fuc"};
  scheme.edge_vocab = {"b"};
  return scheme;
}

}  // namespace

TEST_CASE("self similarity bounds for a 6-node graph") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const MacroGraph L = featurize(fam.L, one_hot_scheme(), {});
  for (double w : {1.0, 3.0, 10.0, 100.0})
    for (LshMetric metric : {LshMetric::L1, LshMetric::L2}) {
      const double k = propagation_kernel(L, L, {w, metric, 30, 42});
      CHECK(k >= 180.0);
      CHECK(k <= 1080.0);
    }
}

TEST_CASE("identical attribute vectors make the cross kernel equal the self kernel") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const FeaturizationScheme scheme = one_hot_scheme();
  const MacroGraph L = featurize(fam.L, scheme, {});
  const MacroGraph M = featurize(fam.M, scheme, {});
  const KernelConfig cfg{1.0, LshMetric::L2, 1, 7};
  // all-Glc attributes, one iteration: both graphs present six copies of the
  // same vector, so every bucket count matches
  CHECK(propagation_kernel(L, M, cfg) == doctest::Approx(propagation_kernel(L, L, cfg)));
}

TEST_CASE("huge bin width saturates to t_max * n1 * n2") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const FeaturizationScheme scheme = one_hot_scheme();
  const MacroGraph L = featurize(fam.L, scheme, {});
  const MacroGraph B = featurize(fam.B_glc_xyl_fuc, scheme, {});
  for (int t_max : {1, 5, 30})
    for (LshMetric metric : {LshMetric::L1, LshMetric::L2}) {
      const KernelConfig cfg{1e12, metric, t_max, 123};
      CHECK(propagation_kernel(L, B, cfg) == doctest::Approx(t_max * 36.0));
      CHECK(propagation_kernel(L, L, cfg) == doctest::Approx(t_max * 36.0));
    }
}

TEST_CASE("kernel is symmetric and deterministic in the seed") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const FeaturizationScheme scheme = one_hot_scheme();
  const MacroGraph a = featurize(fam.L_glc_xyl, scheme, {});
  const MacroGraph b = featurize(fam.B_glc_xyl_fuc, scheme, {});
  const KernelConfig cfg{3.0, LshMetric::L2, 10, 99};
  const double ab = propagation_kernel(a, b, cfg);
  CHECK(ab == propagation_kernel(b, a, cfg));
  CHECK(ab == propagation_kernel(a, b, cfg));
}

TEST_CASE("cauchy-schwarz over random featurized graphs") {
  const std::vector<std::string> vocab = {"Glc", "Xyl", "Fuc"};
  FeaturizationScheme scheme = one_hot_scheme();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MacroGraph g1 = featurize(
        testlib::random_macrograph(seed * 2, 2 + seed % 6, 0.4, vocab, {"b"}),
        scheme, {});
    const MacroGraph g2 = featurize(
        testlib::random_macrograph(seed * 2 + 1, 2 + (seed + 3) % 6, 0.4, vocab,
                                   {"b"}),
        scheme, {});
    const KernelConfig cfg{1.0 + seed % 3, seed % 2 ? LshMetric::L1 : LshMetric::L2,
                           10, seed};
    const double k12 = propagation_kernel(g1, g2, cfg);
    const double k11 = propagation_kernel(g1, g1, cfg);
    const double k22 = propagation_kernel(g2, g2, cfg);
    CHECK(k12 >= 0.0);
    CHECK(k12 * k12 <= k11 * k22 * (1.0 + 1e-9));
  }
}

TEST_CASE("unfeaturized and mismatched inputs are rejected") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const KernelConfig cfg{1.0, LshMetric::L2, 5, 1};
  CHECK_THROWS_AS(propagation_kernel(fam.L, fam.M, cfg), KernelError);
  FeaturizationScheme s3 = one_hot_scheme();
  FeaturizationScheme s2 = one_hot_scheme();
  s2.node_vocab = {"Glc", "Xyl"};
  const MacroGraph a = featurize(fam.L, s3, {});
  const MacroGraph b = featurize(fam.M, s2, {});
  CHECK_THROWS_AS(propagation_kernel(a, b, cfg), KernelError);
}

TEST_CASE("config validation") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const MacroGraph L = featurize(fam.L, one_hot_scheme(), {});
  CHECK_THROWS_AS(propagation_kernel(L, L, {0.0, LshMetric::L2, 5, 1}), KernelError);
  CHECK_THROWS_AS(propagation_kernel(L, L, {1.0, LshMetric::L2, 0, 1}), KernelError);
}

TEST_CASE("gram matrix is symmetric with row-maximal diagonal") {
  const testlib::ReferenceFamily fam = testlib::reference_family();
  const FeaturizationScheme scheme = one_hot_scheme();
  const std::vector<std::string> ids = {"L", "M", "B1", "B2", "Lx", "Bxf"};
  const std::vector<MacroGraph> corpus = {
      featurize(fam.L, scheme, {}),       featurize(fam.M, scheme, {}),
      featurize(fam.B1, scheme, {}),      featurize(fam.B2, scheme, {}),
      featurize(fam.L_glc_xyl, scheme, {}),
      featurize(fam.B_glc_xyl_fuc, scheme, {})};
  const GramMatrix gram = kernel_matrix(ids, corpus, {3.0, LshMetric::L2, 30, 5});
  REQUIRE(gram.values.size() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(gram.values[i][j] == doctest::Approx(gram.values[j][i]));
      CHECK(gram.values[i][j] * gram.values[i][j] <=
            gram.values[i][i] * gram.values[j][j] * (1.0 + 1e-9));
    }
  // matrix entries agree with one-off pairwise evaluation
  CHECK(gram.values[0][3] ==
        doctest::Approx(propagation_kernel(corpus[0], corpus[3],
                                           {3.0, LshMetric::L2, 30, 5})));
}

TEST_CASE("gram serialization") {
  GramMatrix gram;
  gram.ids = {"a", "b"};
  gram.values = {{2.0, 1.0}, {1.0, 3.0}};
  const std::string csv = gram_to_csv(gram);
  CHECK(csv.find("a") != std::string::npos);
  CHECK(csv.find("3") != std::string::npos);
  const std::string js = gram_to_json(gram);
  CHECK(js.find("\"ids\"") != std::string::npos);
}

TEST_CASE("isolated nodes survive propagation") {
  MacroGraph g;
  for (int i = 0; i < 3; ++i) g.nodes.push_back({i, "Glc", {}});
  g.edges.push_back({0, 1, "b", {}});
  const MacroGraph f = featurize(g, one_hot_scheme(), {});
  const double k = propagation_kernel(f, f, {1.0, LshMetric::L2, 20, 0});
  CHECK(k >= 20.0 * 3.0);
  CHECK(k <= 20.0 * 9.0);
}
