#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "macrograph/smiles.hpp"

namespace macrograph {

struct FingerprintParams {
  int radius = 3;
  int n_bits = 128;       // power of two, >= 8
  bool use_stereo = true;

  bool operator==(const FingerprintParams&) const = default;
};

class FingerprintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Fingerprint {
 public:
  Fingerprint() = default;
  Fingerprint(FingerprintParams params, std::vector<std::uint64_t> words)
      : params_(params), words_(std::move(words)) {}

  const FingerprintParams& params() const { return params_; }
  int n_bits() const { return params_.n_bits; }

  bool test(int bit) const {
    return (words_[static_cast<std::size_t>(bit) / 64] >> (bit % 64)) & 1u;
  }
  int popcount() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  // lowercase hex, bit 0 in the most significant position of the first digit
  std::string to_hex() const;

  bool operator==(const Fingerprint&) const = default;

 private:
  FingerprintParams params_;
  std::vector<std::uint64_t> words_;
};

Fingerprint ecfp(const MolecularGraph& graph, const FingerprintParams& params);

double tanimoto(const Fingerprint& a, const Fingerprint& b);
double tanimoto_distance(const Fingerprint& a, const Fingerprint& b);

struct SimilarityStats {
  FingerprintParams params;
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<int> histogram;  // 50 uniform bins on [0, 1]
  int n_pairs = 0;
};

// Pairwise Tanimoto statistics over a named SMILES library, one row per
// parameter setting. Parse failures are reported with the offending key.
std::vector<SimilarityStats> similarity_stats(
    const std::map<std::string, std::string>& library,
    const std::vector<FingerprintParams>& params_grid);

}  // namespace macrograph
