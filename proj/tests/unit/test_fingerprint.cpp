#include <doctest.h>

#include <random>

#include "macrograph/fingerprint.hpp"
#include "testlib.hpp"

using namespace macrograph;

namespace {

Fingerprint from_bits(const std::vector<int>& bits, int n_bits = 128) {
  std::vector<std::uint64_t> words((n_bits + 63) / 64, 0);
  for (int bit : bits) words[bit / 64] |= std::uint64_t{1} << (bit % 64);
  return Fingerprint({3, n_bits, true}, std::move(words));
}

}  // namespace

TEST_CASE("single atom sets exactly one bit") {
  for (int radius : {0, 1, 3}) {
    const Fingerprint fp = ecfp(parse_smiles("C"), {radius, 128, true});
    CHECK(fp.popcount() == 1);
  }
}

TEST_CASE("ethanol environment count at radius 1") {
  const Fingerprint fp = ecfp(parse_smiles("CCO"), {1, 128, true});
  CHECK(fp.popcount() >= 3);
  CHECK(fp.popcount() <= 6);
}

TEST_CASE("atom order does not matter") {
  const FingerprintParams params{3, 128, true};
  CHECK(ecfp(parse_smiles("CCO"), params) == ecfp(parse_smiles("OCC"), params));
}

TEST_CASE("permutation invariance on random molecules") {
  std::mt19937_64 rng(13);
  const FingerprintParams params{3, 128, true};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const testlib::RandomMolecule mol = testlib::random_molecule(rng, n);
    const std::string s1 = testlib::write_smiles(mol, rng);
    const std::string s2 = testlib::write_smiles(mol, rng);
    CAPTURE(s1);
    CAPTURE(s2);
    CHECK(ecfp(parse_smiles(s1), params) == ecfp(parse_smiles(s2), params));
  }
}

TEST_CASE("tanimoto on explicit bit sets") {
  const Fingerprint x = from_bits({0, 1, 2});
  const Fingerprint y = from_bits({1, 2, 3});
  const Fingerprint z = from_bits({10, 11});
  CHECK(tanimoto(x, x) == doctest::Approx(1.0));
  CHECK(tanimoto(x, y) == doctest::Approx(0.5));
  CHECK(tanimoto(x, z) == doctest::Approx(0.0));
  CHECK(tanimoto(x, y) == tanimoto(y, x));
  CHECK(tanimoto_distance(x, x) == doctest::Approx(0.0));
  CHECK(tanimoto_distance(x, y) == doctest::Approx(0.5));
  CHECK(tanimoto_distance(x, z) == doctest::Approx(1.0));
}

TEST_CASE("parameter mismatch is rejected") {
  const Fingerprint a = ecfp(parse_smiles("C"), {1, 128, true});
  const Fingerprint b = ecfp(parse_smiles("C"), {1, 64, true});
  CHECK_THROWS_AS(tanimoto(a, b), FingerprintError);
}

TEST_CASE("empty molecule is rejected") {
  CHECK_THROWS_AS(ecfp(MolecularGraph{}, {3, 128, true}), FingerprintError);
}

TEST_CASE("tanimoto equals one iff bit vectors equal") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const testlib::RandomMolecule m1 = testlib::random_molecule(rng, 3 + rng() % 6);
    const testlib::RandomMolecule m2 = testlib::random_molecule(rng, 3 + rng() % 6);
    const Fingerprint a = ecfp(parse_smiles(testlib::write_smiles(m1, rng)),
                               {2, 64, true});
    const Fingerprint b = ecfp(parse_smiles(testlib::write_smiles(m2, rng)),
                               {2, 64, true});
    CHECK((tanimoto(a, b) == 1.0) == (a == b));
  }
}

TEST_CASE("stereo sensitivity of glycosidic bond variants") {
  const auto lib = testlib::reference_library();
  const MolecularGraph alpha = parse_smiles(lib.at("a"));
  const MolecularGraph beta = parse_smiles(lib.at("b"));
  const Fingerprint fa = ecfp(alpha, {3, 16, true});
  const Fingerprint fb = ecfp(beta, {3, 16, true});
  CHECK_FALSE(fa == fb);
  const Fingerprint ga = ecfp(alpha, {3, 16, false});
  const Fingerprint gb = ecfp(beta, {3, 16, false});
  CHECK(ga == gb);
}

TEST_CASE("hex serialization") {
  const Fingerprint fp = from_bits({0, 5}, 16);
  // bit 0 -> weight 8 of digit 0; bit 5 -> weight 4 of digit 1
  CHECK(fp.to_hex() == "8400");
  CHECK(fp.to_hex().size() == 4);
}

TEST_CASE("similarity stats on a trivial library") {
  const std::map<std::string, std::string> twin = {{"a", "CCO"}, {"b", "CCO"}};
  const auto stats = similarity_stats(twin, {{3, 128, true}});
  CHECK(stats[0].mean == doctest::Approx(1.0));
  CHECK(stats[0].stddev == doctest::Approx(0.0));
  CHECK(stats[0].n_pairs == 1);
  CHECK(stats[0].histogram[49] == 1);
}

TEST_CASE("distinct single atoms are disjoint at radius 0") {
  const std::map<std::string, std::string> lib = {{"c", "C"}, {"o", "O"}};
  const auto stats = similarity_stats(lib, {{0, 128, true}});
  CHECK(stats[0].mean == doctest::Approx(0.0));
}

TEST_CASE("folding monotonicity on the reference library") {
  const auto lib = testlib::reference_library();
  const auto stats = similarity_stats(
      lib, {{3, 64, true}, {3, 128, true}, {3, 256, true}});
  CHECK(stats[0].mean >= stats[1].mean);
  CHECK(stats[1].mean >= stats[2].mean);
}

TEST_CASE("parse failures carry the library key") {
  const std::map<std::string, std::string> lib = {{"bad", "C("}, {"ok", "CC"}};
  CHECK_THROWS_WITH_AS(similarity_stats(lib, {{3, 128, true}}),
                       doctest::Contains("bad"), FingerprintError);
}
