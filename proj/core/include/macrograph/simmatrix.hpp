#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "macrograph/ged.hpp"
#include "macrograph/kernel.hpp"
#include "macrograph/macrofile.hpp"
#include "macrograph/substitution.hpp"

namespace macrograph {

struct Corpus {
  std::vector<std::string> ids;
  std::vector<MacroGraph> graphs;
  std::map<std::string, std::string> library;  // shared label -> SMILES
};

struct GedEngine {
  EditCostConfig costs;
  int budget = kDefaultGedBudget;
  // when absent, substitution matrices are built from the corpus library
  std::optional<SubstitutionMatrix> node_matrix;
  std::optional<SubstitutionMatrix> edge_matrix;
  FingerprintParams node_params{3, 128, true};
  FingerprintParams edge_params{3, 16, true};
};

struct KernelEngine {
  KernelConfig cfg;
};

using Engine = std::variant<GedEngine, KernelEngine>;

enum class PairStatus { Computed, ZeroCapped, BudgetExceeded };

struct SimilarityReport {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> matrix;
  std::vector<std::vector<PairStatus>> status;
  std::optional<std::vector<std::vector<double>>> normalized;
  double wall_time_seconds = 0.0;
  int pairs_total = 0;
  int pairs_budget_exceeded = 0;
};

class SimMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All n(n+1)/2 unordered pairs, including the diagonal. GED pairs over the
// node budget score 0 and are flagged rather than aborting the run. The
// result is independent of the worker count.
SimilarityReport pairwise(const Corpus& corpus, const Engine& engine, int workers);

// Each row divided by its own maximum; all-zero rows pass through.
std::vector<std::vector<double>> row_max_normalize(
    const std::vector<std::vector<double>>& matrix);

struct MatrixStats {
  double zero_fraction_pairs = 0.0;    // over unordered off-diagonal pairs
  double zero_fraction_indices = 0.0;  // over all n*n entries
  double mean = 0.0;
  double max = 0.0;
  std::vector<int> histogram;  // 50 bins on [0, max]
};

MatrixStats matrix_stats(const SimilarityReport& report);

std::string report_to_csv(const SimilarityReport& report, bool normalized);
std::string report_to_json(const SimilarityReport& report);

}  // namespace macrograph
