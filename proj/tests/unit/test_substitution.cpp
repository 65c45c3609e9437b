#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "macrograph/substitution.hpp"
#include "testlib.hpp"

using namespace macrograph;

namespace {

std::string temp_path(const char* stem) {
  return std::string("/tmp/macrograph_test_") + stem + ".csv";
}

}  // namespace

TEST_CASE("construction validates the invariants") {
  CHECK_NOTHROW(SubstitutionMatrix({"a", "b"}, {{1.0, 0.5}, {0.5, 1.0}}));
  // off-unit diagonal
  CHECK_THROWS_AS(SubstitutionMatrix({"a", "b"}, {{0.9, 0.5}, {0.5, 1.0}}),
                  SubstitutionError);
  // asymmetric
  CHECK_THROWS_AS(SubstitutionMatrix({"a", "b"}, {{1.0, 0.5}, {0.4, 1.0}}),
                  SubstitutionError);
  // out of range
  CHECK_THROWS_AS(SubstitutionMatrix({"a", "b"}, {{1.0, 1.5}, {1.5, 1.0}}),
                  SubstitutionError);
  // shape mismatch
  CHECK_THROWS_AS(SubstitutionMatrix({"a", "b"}, {{1.0, 0.5}}), SubstitutionError);
}

TEST_CASE("built matrix is a valid similarity table") {
  const auto lib = testlib::reference_library();
  const SubstitutionMatrix m = build_substitution_matrix(lib, {3, 128, true});
  CHECK(m.size() == lib.size());
  for (const auto& [a, _] : lib) {
    CHECK(m.similarity(a, a) == doctest::Approx(1.0));
    for (const auto& [b, __] : lib) {
      CHECK(m.similarity(a, b) == m.similarity(b, a));
      CHECK(m.similarity(a, b) >= 0.0);
      CHECK(m.similarity(a, b) <= 1.0);
      CHECK(m.distance(a, b) == doctest::Approx(1.0 - m.similarity(a, b)));
    }
  }
  // related sugars overlap, so the off-diagonal is strictly inside (0, 1)
  CHECK(m.similarity("Glc", "Xyl") > 0.0);
  CHECK(m.similarity("Glc", "Xyl") < 1.0);
}

TEST_CASE("lookup of an unknown name fails") {
  const SubstitutionMatrix m({"a"}, {{1.0}});
  CHECK_THROWS_AS(m.similarity("a", "zzz"), SubstitutionError);
}

TEST_CASE("csv round trip at six decimals") {
  const auto lib = testlib::reference_library();
  const SubstitutionMatrix m = build_substitution_matrix(lib, {3, 64, true});
  const std::string path = temp_path("roundtrip");
  save_matrix_csv(m, path);
  const SubstitutionMatrix back = load_matrix_csv(path);
  REQUIRE(back.vocab() == m.vocab());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      CHECK(back.similarity_at(i, j) ==
            doctest::Approx(m.similarity_at(i, j)).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("csv load rejects a tampered header") {
  const SubstitutionMatrix m({"a", "b"}, {{1.0, 0.25}, {0.25, 1.0}});
  const std::string path = temp_path("tamper");
  save_matrix_csv(m, path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  text.replace(text.find(",a,b"), 4, ",b,a");
  std::ofstream out(path);
  out << text;
  out.close();
  CHECK_THROWS_AS(load_matrix_csv(path), SubstitutionError);
  std::remove(path.c_str());
}

TEST_CASE("json round trip") {
  const SubstitutionMatrix m({"x", "y"}, {{1.0, 0.125}, {0.125, 1.0}});
  const SubstitutionMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK(back.vocab() == m.vocab());
  CHECK(back.similarity("x", "y") == doctest::Approx(0.125));
}

TEST_CASE("tanimoto agreement with direct fingerprint computation") {
  const auto lib = testlib::reference_library();
  const FingerprintParams params{3, 128, true};
  const SubstitutionMatrix m = build_substitution_matrix(lib, params);
  const Fingerprint glc = ecfp(parse_smiles(lib.at("Glc")), params);
  const Fingerprint xyl = ecfp(parse_smiles(lib.at("Xyl")), params);
  CHECK(m.similarity("Glc", "Xyl") == doctest::Approx(tanimoto(glc, xyl)));
}
