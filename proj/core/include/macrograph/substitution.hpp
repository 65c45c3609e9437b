#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "macrograph/fingerprint.hpp"

namespace macrograph {

class SubstitutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symmetric pairwise Tanimoto similarity over a name vocabulary, unit
// diagonal. Stored as similarity; GED consumes 1 - sim.
class SubstitutionMatrix {
 public:
  SubstitutionMatrix() = default;
  SubstitutionMatrix(std::vector<std::string> vocab,
                     std::vector<std::vector<double>> sim);

  const std::vector<std::string>& vocab() const { return vocab_; }
  std::size_t size() const { return vocab_.size(); }

  double similarity(const std::string& a, const std::string& b) const;
  double distance(const std::string& a, const std::string& b) const {
    return 1.0 - similarity(a, b);
  }
  double similarity_at(std::size_t i, std::size_t j) const { return sim_[i][j]; }

 private:
  std::size_t index_of(const std::string& name) const;

  std::vector<std::string> vocab_;
  std::vector<std::vector<double>> sim_;
};

SubstitutionMatrix build_substitution_matrix(
    const std::map<std::string, std::string>& library,
    const FingerprintParams& params);

// CSV with a header row/column of names, entries at 6 decimals.
void save_matrix_csv(const SubstitutionMatrix& matrix, const std::string& path);
SubstitutionMatrix load_matrix_csv(const std::string& path);

std::string matrix_to_json(const SubstitutionMatrix& matrix);
SubstitutionMatrix matrix_from_json(const std::string& json_text);

}  // namespace macrograph
