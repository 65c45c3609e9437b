#include "macrograph/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "macrograph/detail/hash.hpp"

namespace macrograph {

namespace {

using detail::CounterRng;
using detail::mix64;

struct Projection {
  std::vector<double> direction;
  double offset = 0.0;  // uniform on [0, w)
};

// One shared projection per iteration: standard normal components preserve
// L2 locality, standard Cauchy components preserve L1.
Projection draw_projection(std::uint64_t seed, int iteration, int dims,
                           const KernelConfig& cfg) {
  CounterRng rng(mix64(seed) ^ mix64(static_cast<std::uint64_t>(iteration) + 1));
  Projection proj;
  proj.direction.resize(dims);
  for (int i = 0; i < dims; ++i) {
    if (cfg.metric == LshMetric::L2) {
      const double u1 = rng.next_unit();
      const double u2 = rng.next_unit();
      proj.direction[i] =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    } else {
      proj.direction[i] = std::tan(std::numbers::pi * (rng.next_unit() - 0.5));
    }
  }
  proj.offset = rng.next_unit() * cfg.bin_width;
  return proj;
}

using BucketCounts = std::map<std::int64_t, int>;

BucketCounts bucket_nodes(const std::vector<std::vector<double>>& attrs,
                          const Projection& proj, double bin_width) {
  BucketCounts counts;
  for (const std::vector<double>& row : attrs) {
    double dot = proj.offset;
    for (std::size_t i = 0; i < row.size(); ++i) dot += proj.direction[i] * row[i];
    counts[static_cast<std::int64_t>(std::floor(dot / bin_width))] += 1;
  }
  return counts;
}

// X <- D^-1 A X; isolated nodes keep their attribute row.
void propagate(const MacroGraph& graph, std::vector<std::vector<double>>& attrs) {
  const auto adjacency = graph.adjacency();
  std::vector<std::vector<double>> next(attrs.size());
  for (int v = 0; v < graph.n(); ++v) {
    if (adjacency[v].empty()) {
      next[v] = attrs[v];
      continue;
    }
    std::vector<double> row(attrs[v].size(), 0.0);
    for (int edge_idx : adjacency[v]) {
      const MacroEdge& e = graph.edges[edge_idx];
      const int to = e.u == v ? e.v : e.u;
      for (std::size_t i = 0; i < row.size(); ++i) row[i] += attrs[to][i];
    }
    const double inv_degree = 1.0 / adjacency[v].size();
    for (double& x : row) x *= inv_degree;
    next[v] = std::move(row);
  }
  attrs = std::move(next);
}

std::vector<std::vector<double>> node_attrs(const MacroGraph& graph) {
  if (!graph.featurized())
    throw KernelError("UnfeaturizedGraph: kernel needs node attributes");
  std::vector<std::vector<double>> attrs;
  attrs.reserve(graph.nodes.size());
  for (const MacroNode& node : graph.nodes) {
    if (node.attr.size() != graph.nodes.front().attr.size())
      throw KernelError("AttributeLengthMismatch within one graph");
    attrs.push_back(node.attr);
  }
  return attrs;
}

void check_config(const KernelConfig& cfg) {
  if (cfg.bin_width <= 0) throw KernelError("bin_width must be positive");
  if (cfg.t_max < 1) throw KernelError("t_max must be at least 1");
}

double match_count(const BucketCounts& a, const BucketCounts& b) {
  const BucketCounts& small = a.size() <= b.size() ? a : b;
  const BucketCounts& large = a.size() <= b.size() ? b : a;
  double total = 0.0;
  for (const auto& [bucket, count] : small) {
    const auto it = large.find(bucket);
    if (it != large.end()) total += static_cast<double>(count) * it->second;
  }
  return total;
}

// Bucket profiles for one graph across all iterations; pairwise kernel
// values are then pure count products, so every pair sees the same hashes.
std::vector<BucketCounts> bucket_profiles(const MacroGraph& graph,
                                          const KernelConfig& cfg, int dims) {
  std::vector<std::vector<double>> attrs = node_attrs(graph);
  if (static_cast<int>(attrs.front().size()) != dims)
    throw KernelError("AttributeLengthMismatch between graphs");
  std::vector<BucketCounts> profiles;
  profiles.reserve(cfg.t_max);
  for (int t = 0; t < cfg.t_max; ++t) {
    const Projection proj = draw_projection(cfg.seed, t, dims, cfg);
    profiles.push_back(bucket_nodes(attrs, proj, cfg.bin_width));
    if (t + 1 < cfg.t_max) propagate(graph, attrs);
  }
  return profiles;
}

}  // namespace

double propagation_kernel(const MacroGraph& g1, const MacroGraph& g2,
                          const KernelConfig& cfg) {
  check_config(cfg);
  if (!g1.featurized() || !g2.featurized())
    throw KernelError("UnfeaturizedGraph: kernel needs node attributes");
  const int dims = static_cast<int>(g1.nodes.front().attr.size());
  const std::vector<BucketCounts> p1 = bucket_profiles(g1, cfg, dims);
  const std::vector<BucketCounts> p2 = bucket_profiles(g2, cfg, dims);
  double k = 0.0;
  for (int t = 0; t < cfg.t_max; ++t) k += match_count(p1[t], p2[t]);
  return k;
}

GramMatrix kernel_matrix(const std::vector<std::string>& ids,
                         const std::vector<MacroGraph>& corpus,
                         const KernelConfig& cfg) {
  check_config(cfg);
  if (corpus.empty()) throw KernelError("empty corpus");
  if (ids.size() != corpus.size())
    throw KernelError("ids and corpus size mismatch");
  const int dims = static_cast<int>(corpus.front().nodes.front().attr.size());

  std::vector<std::vector<BucketCounts>> profiles;
  profiles.reserve(corpus.size());
  for (std::size_t g = 0; g < corpus.size(); ++g) {
    try {
      profiles.push_back(bucket_profiles(corpus[g], cfg, dims));
    } catch (const KernelError& e) {
      throw KernelError("graph '" + ids[g] + "': " + e.what());
    }
  }

  GramMatrix gram;
  gram.ids = ids;
  const std::size_t n = corpus.size();
  gram.values.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double k = 0.0;
      for (int t = 0; t < cfg.t_max; ++t) k += match_count(profiles[i][t], profiles[j][t]);
      gram.values[i][j] = gram.values[j][i] = k;
    }
  }
  return gram;
}

std::string gram_to_csv(const GramMatrix& gram) {
  std::ostringstream out;
  for (const std::string& id : gram.ids) out << ',' << id;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < gram.ids.size(); ++i) {
    out << gram.ids[i];
    for (double v : gram.values[i]) {
      std::snprintf(buf, sizeof buf, "%.6f", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string gram_to_json(const GramMatrix& gram) {
  nlohmann::json j;
  j["ids"] = gram.ids;
  j["values"] = gram.values;
  return j.dump(2);
}

}  // namespace macrograph
