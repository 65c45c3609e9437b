#include "macrograph/ged.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "macrograph/substitution.hpp"

namespace macrograph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieEps = 1e-12;

// edge_at[u][v] = edge index, or -1
std::vector<std::vector<int>> edge_index(const MacroGraph& g) {
  std::vector<std::vector<int>> at(g.n(), std::vector<int>(g.n(), -1));
  for (int i = 0; i < g.m(); ++i) {
    at[g.edges[i].u][g.edges[i].v] = i;
    at[g.edges[i].v][g.edges[i].u] = i;
  }
  return at;
}

// Jonker-Volgenant style square LSAP, returns the optimal total cost.
double solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return 0.0;
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

struct PairContext {
  const MacroGraph& g1;
  const MacroGraph& g2;
  EditCostConfig costs;
  std::vector<std::vector<int>> edge1;         // g1 adjacency edge lookup
  std::vector<std::vector<int>> edge2;         // g2 adjacency edge lookup
  std::vector<std::vector<double>> node_cost;  // c_sub_node * node_dist
  std::vector<std::vector<double>> edge_cost;  // c_sub_edge * edge_dist, by edge ids
  std::vector<int> e1_after;  // g1 edges whose later endpoint is >= depth

  PairContext(const MacroGraph& a, const MacroGraph& b, const EditCostConfig& c,
              const LabelDistance& node_dist, const LabelDistance& edge_dist)
      : g1(a), g2(b), costs(c), edge1(edge_index(a)), edge2(edge_index(b)) {
    node_cost.assign(g1.n(), std::vector<double>(g2.n(), 0.0));
    for (int u = 0; u < g1.n(); ++u)
      for (int v = 0; v < g2.n(); ++v)
        node_cost[u][v] =
            costs.c_sub_node * node_dist(g1.nodes[u].label, g2.nodes[v].label);
    edge_cost.assign(g1.m(), std::vector<double>(g2.m(), 0.0));
    for (int e = 0; e < g1.m(); ++e)
      for (int f = 0; f < g2.m(); ++f)
        edge_cost[e][f] =
            costs.c_sub_edge * edge_dist(g1.edges[e].label, g2.edges[f].label);
    e1_after.assign(g1.n() + 1, 0);
    for (const MacroEdge& e : g1.edges) ++e1_after[std::max(e.u, e.v)];
    for (int d = g1.n() - 1; d >= 0; --d) e1_after[d] += e1_after[d + 1];
  }
};

// Depth-first branch and bound over partial node assignments in g1 node
// order. The admissible bound combines an optimal assignment over the
// remaining nodes with an edge count mismatch term, so pruning never
// discards an optimal path. Children are explored with g2 candidates
// ascending and deletion last; the first optimum found is therefore the
// lexicographically smallest witness.
class ExactSearch {
 public:
  explicit ExactSearch(const PairContext& ctx) : ctx_(ctx) {
    used_.assign(ctx.g2.n(), false);
    mapping_.assign(ctx.g1.n(), -2);
  }

  GedResult run() {
    best_ = kInf;
    dfs(0, 0.0, 0);
    GedResult result;
    result.distance = best_;
    result.path = make_path(best_mapping_);
    return result;
  }

 private:
  void dfs(int depth, double g_cost, int accounted_g2_edges) {
    if (depth == ctx_.g1.n()) {
      double total = g_cost;
      int matched = 0;
      for (bool b : used_) matched += b;
      total += (ctx_.g2.n() - matched) * ctx_.costs.c_indel;
      total += (ctx_.g2.m() - accounted_g2_edges) * ctx_.costs.c_indel;
      if (total < best_ - kTieEps) {
        best_ = total;
        best_mapping_ = mapping_;
      }
      return;
    }
    // >= cuts cost ties: the first optimum reached is already the
    // lexicographically smallest mapping, later equal-cost paths are larger
    if (g_cost + lower_bound(depth, accounted_g2_edges) >= best_ - kTieEps)
      return;

    const int u = depth;
    for (int v = 0; v < ctx_.g2.n(); ++v) {
      if (used_[v]) continue;
      double delta = ctx_.node_cost[u][v];
      int newly_accounted = 0;
      for (int prior = 0; prior < depth; ++prior) {
        const int e1 = ctx_.edge1[u][prior];
        const int e2 =
            mapping_[prior] >= 0 ? ctx_.edge2[v][mapping_[prior]] : -1;
        if (e1 >= 0 && e2 >= 0) {
          delta += ctx_.edge_cost[e1][e2];
          ++newly_accounted;
        } else if (e1 >= 0 || e2 >= 0) {
          delta += ctx_.costs.c_indel;
          if (e2 >= 0) ++newly_accounted;
        }
      }
      used_[v] = true;
      mapping_[u] = v;
      dfs(depth + 1, g_cost + delta, accounted_g2_edges + newly_accounted);
      used_[v] = false;
    }

    // deletion of u, plus its edges back to already processed nodes
    double delta = ctx_.costs.c_indel;
    for (int prior = 0; prior < depth; ++prior)
      if (ctx_.edge1[u][prior] >= 0) delta += ctx_.costs.c_indel;
    mapping_[u] = -1;
    dfs(depth + 1, g_cost + delta, accounted_g2_edges);
    mapping_[u] = -2;
  }

  double lower_bound(int depth, int accounted_g2_edges) const {
    const int rem1 = ctx_.g1.n() - depth;
    int matched = 0;
    for (bool b : used_) matched += b;
    const int rem2 = ctx_.g2.n() - matched;
    const int k = rem1 + rem2;

    double node_bound = 0.0;
    if (k > 0) {
      std::vector<int> free2;
      for (int v = 0; v < ctx_.g2.n(); ++v)
        if (!used_[v]) free2.push_back(v);
      std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          if (i < rem1 && j < rem2)
            cost[i][j] = ctx_.node_cost[depth + i][free2[j]];
          else if (i < rem1)
            cost[i][j] = (j - rem2 == i) ? ctx_.costs.c_indel : kBig;
          else if (j < rem2)
            cost[i][j] = (i - rem1 == j) ? ctx_.costs.c_indel : kBig;
          else
            cost[i][j] = 0.0;
        }
      }
      node_bound = solve_assignment(cost);
    }

    const int e1_rem = ctx_.e1_after[depth];
    const int e2_rem = ctx_.g2.m() - accounted_g2_edges;
    const double edge_bound = std::abs(e1_rem - e2_rem) * ctx_.costs.c_indel;
    return node_bound + edge_bound;
  }

  EditPath make_path(const std::vector<int>& mapping) const {
    EditPath path;
    path.mapping = mapping;
    std::vector<bool> matched2(ctx_.g2.n(), false);
    for (int u = 0; u < ctx_.g1.n(); ++u) {
      if (mapping[u] >= 0) {
        ++path.node_substitutions;
        matched2[mapping[u]] = true;
      } else {
        ++path.node_deletions;
      }
    }
    for (bool b : matched2) path.node_insertions += !b;
    std::vector<bool> g2_edge_covered(ctx_.g2.m(), false);
    for (const MacroEdge& e : ctx_.g1.edges) {
      const int a = mapping[e.u], b = mapping[e.v];
      const int e2 = (a >= 0 && b >= 0) ? ctx_.edge2[a][b] : -1;
      if (e2 >= 0) {
        ++path.edge_substitutions;
        g2_edge_covered[e2] = true;
      } else {
        ++path.edge_deletions;
      }
    }
    for (bool b : g2_edge_covered) path.edge_insertions += !b;
    path.total_cost = best_;
    return path;
  }

  static constexpr double kBig = 1e18;

  const PairContext& ctx_;
  std::vector<bool> used_;
  std::vector<int> mapping_;
  std::vector<int> best_mapping_;
  double best_ = kInf;
};

}  // namespace

BudgetExceeded::BudgetExceeded(int n1, int n2)
    : GedError("BudgetExceeded: graphs have " + std::to_string(n1) + " and " +
               std::to_string(n2) + " nodes"),
      n1_(n1),
      n2_(n2) {}

LabelDistance uniform_label_distance() {
  return [](const std::string& a, const std::string& b) {
    return a == b ? 0.0 : 1.0;
  };
}

LabelDistance matrix_label_distance(const SubstitutionMatrix& matrix) {
  return [&matrix](const std::string& a, const std::string& b) {
    return matrix.distance(a, b);
  };
}

std::string EditPath::to_json() const {
  nlohmann::json j;
  j["mapping"] = nlohmann::json::array();
  for (std::size_t u = 0; u < mapping.size(); ++u)
    if (mapping[u] >= 0) j["mapping"].push_back({u, mapping[u]});
  j["node_substitutions"] = node_substitutions;
  j["deletions"] =
      nlohmann::json{{"nodes", node_deletions}, {"edges", edge_deletions}};
  j["insertions"] =
      nlohmann::json{{"nodes", node_insertions}, {"edges", edge_insertions}};
  j["edge_substitutions"] = edge_substitutions;
  j["cost"] = total_cost;
  return j.dump(2);
}

GedResult ged_exact(const MacroGraph& g1, const MacroGraph& g2,
                    const EditCostConfig& costs, const LabelDistance& node_dist,
                    const LabelDistance& edge_dist, int budget) {
  if (std::max(g1.n(), g2.n()) > budget) throw BudgetExceeded(g1.n(), g2.n());
  const PairContext ctx(g1, g2, costs, node_dist, edge_dist);
  return ExactSearch(ctx).run();
}

double edit_path_cost(const MacroGraph& g1, const MacroGraph& g2,
                      const std::vector<int>& mapping, const EditCostConfig& costs,
                      const LabelDistance& node_dist,
                      const LabelDistance& edge_dist) {
  const auto edge2 = edge_index(g2);
  double total = 0.0;
  std::vector<bool> matched2(g2.n(), false);
  for (int u = 0; u < g1.n(); ++u) {
    const int v = mapping[u];
    if (v >= 0) {
      total += costs.c_sub_node * node_dist(g1.nodes[u].label, g2.nodes[v].label);
      matched2[v] = true;
    } else {
      total += costs.c_indel;
    }
  }
  for (bool b : matched2)
    if (!b) total += costs.c_indel;

  std::vector<bool> g2_edge_covered(g2.m(), false);
  for (const MacroEdge& e : g1.edges) {
    const int a = mapping[e.u], b = mapping[e.v];
    const int e2 = (a >= 0 && b >= 0) ? edge2[a][b] : -1;
    if (e2 >= 0) {
      total +=
          costs.c_sub_edge * edge_dist(e.label, g2.edges[e2].label);
      g2_edge_covered[e2] = true;
    } else {
      total += costs.c_indel;
    }
  }
  for (bool b : g2_edge_covered)
    if (!b) total += costs.c_indel;
  return total;
}

namespace {

void enumerate_mappings(const MacroGraph& g1, const MacroGraph& g2,
                        const EditCostConfig& costs, const LabelDistance& node_dist,
                        const LabelDistance& edge_dist, std::vector<int>& mapping,
                        std::vector<bool>& used, int depth, double& best) {
  if (depth == g1.n()) {
    best = std::min(best,
                    edit_path_cost(g1, g2, mapping, costs, node_dist, edge_dist));
    return;
  }
  for (int v = 0; v < g2.n(); ++v) {
    if (used[v]) continue;
    used[v] = true;
    mapping[depth] = v;
    enumerate_mappings(g1, g2, costs, node_dist, edge_dist, mapping, used,
                       depth + 1, best);
    used[v] = false;
  }
  mapping[depth] = -1;
  enumerate_mappings(g1, g2, costs, node_dist, edge_dist, mapping, used, depth + 1,
                     best);
}

}  // namespace

double ged_brute(const MacroGraph& g1, const MacroGraph& g2,
                 const EditCostConfig& costs, const LabelDistance& node_dist,
                 const LabelDistance& edge_dist) {
  if (std::max(g1.n(), g2.n()) > 7)
    throw GedError("ged_brute is limited to 7 nodes");
  std::vector<int> mapping(g1.n(), -1);
  std::vector<bool> used(g2.n(), false);
  double best = kInf;
  enumerate_mappings(g1, g2, costs, node_dist, edge_dist, mapping, used, 0, best);
  return best;
}

}  // namespace macrograph
