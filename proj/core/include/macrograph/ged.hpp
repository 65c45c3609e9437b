#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "macrograph/macrofile.hpp"

namespace macrograph {

// One insertion/deletion constant shared by nodes and edges, plus the
// substitution multipliers applied to the Tanimoto distances.
struct EditCostConfig {
  double c_indel = 1.0;
  double c_sub_node = 1.0;
  double c_sub_edge = 1.0;
};

// name pair -> distance in [0, 1]
using LabelDistance =
    std::function<double(const std::string&, const std::string&)>;

// Distance that is 0 for equal labels and 1 otherwise.
LabelDistance uniform_label_distance();

// Distance backed by a substitution matrix (1 - similarity).
class SubstitutionMatrix;
LabelDistance matrix_label_distance(const SubstitutionMatrix& matrix);

struct EditPath {
  // mapping[u] = matched node of g2, or -1 when u is deleted; g2 nodes
  // absent from the mapping are inserted
  std::vector<int> mapping;
  int node_substitutions = 0;
  int node_deletions = 0;
  int node_insertions = 0;
  int edge_substitutions = 0;
  int edge_deletions = 0;
  int edge_insertions = 0;
  double total_cost = 0.0;

  std::string to_json() const;
};

struct GedResult {
  double distance = 0.0;
  EditPath path;
};

class GedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public GedError {
 public:
  BudgetExceeded(int n1, int n2);
  int n1() const { return n1_; }
  int n2() const { return n2_; }

 private:
  int n1_, n2_;
};

inline constexpr int kDefaultGedBudget = 12;

// Globally minimal edit cost, with one optimal witness path. Ties between
// optimal paths are broken by the lexicographically smallest node mapping
// (deletion orders after every real node).
GedResult ged_exact(const MacroGraph& g1, const MacroGraph& g2,
                    const EditCostConfig& costs, const LabelDistance& node_dist,
                    const LabelDistance& edge_dist,
                    int budget = kDefaultGedBudget);

// Exhaustive enumeration oracle; costs each complete mapping from scratch.
double ged_brute(const MacroGraph& g1, const MacroGraph& g2,
                 const EditCostConfig& costs, const LabelDistance& node_dist,
                 const LabelDistance& edge_dist);

// Cost of one complete node mapping, recomputed independently of the search.
double edit_path_cost(const MacroGraph& g1, const MacroGraph& g2,
                      const std::vector<int>& mapping, const EditCostConfig& costs,
                      const LabelDistance& node_dist,
                      const LabelDistance& edge_dist);

}  // namespace macrograph
