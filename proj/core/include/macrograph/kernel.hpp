#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "macrograph/macrofile.hpp"

namespace macrograph {

enum class LshMetric { L1, L2 };

struct KernelConfig {
  double bin_width = 1.0;
  LshMetric metric = LshMetric::L2;
  int t_max = 30;
  std::uint64_t seed = 0;
};

struct GramMatrix {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;
};

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Propagation attribute kernel: per iteration, every node of both graphs
// is LSH-bucketed by one shared random projection of its attribute vector,
// matching bucket counts are multiplied and accumulated, and attributes
// are then diffused along edges by the row-stochastic random walk matrix.
// All randomness is keyed by (seed, iteration), so any pair of graphs sees
// the same projections regardless of evaluation order.
double propagation_kernel(const MacroGraph& g1, const MacroGraph& g2,
                          const KernelConfig& cfg);

GramMatrix kernel_matrix(const std::vector<std::string>& ids,
                         const std::vector<MacroGraph>& corpus,
                         const KernelConfig& cfg);

std::string gram_to_csv(const GramMatrix& gram);
std::string gram_to_json(const GramMatrix& gram);

}  // namespace macrograph
