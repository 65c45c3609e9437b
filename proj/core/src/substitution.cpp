#include "macrograph/substitution.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace macrograph {

namespace {

void validate(const std::vector<std::string>& vocab,
              const std::vector<std::vector<double>>& sim) {
  const std::size_t n = vocab.size();
  if (sim.size() != n)
    throw SubstitutionError("matrix shape does not match vocabulary size");
  for (std::size_t i = 0; i < n; ++i) {
    if (sim[i].size() != n) throw SubstitutionError("matrix is not square");
    if (std::abs(sim[i][i] - 1.0) > 1e-9)
      throw SubstitutionError("diagonal entry is not 1 for '" + vocab[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      if (sim[i][j] < 0.0 || sim[i][j] > 1.0)
        throw SubstitutionError("entry out of [0,1] at (" + vocab[i] + ", " +
                                vocab[j] + ")");
      if (std::abs(sim[i][j] - sim[j][i]) > 1e-9)
        throw SubstitutionError("matrix is asymmetric at (" + vocab[i] + ", " +
                                vocab[j] + ")");
    }
  }
}

std::string format_entry(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace

SubstitutionMatrix::SubstitutionMatrix(std::vector<std::string> vocab,
                                       std::vector<std::vector<double>> sim)
    : vocab_(std::move(vocab)), sim_(std::move(sim)) {
  validate(vocab_, sim_);
}

std::size_t SubstitutionMatrix::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vocab_.size(); ++i)
    if (vocab_[i] == name) return i;
  throw SubstitutionError("UnknownName: '" + name + "'");
}

double SubstitutionMatrix::similarity(const std::string& a,
                                      const std::string& b) const {
  return sim_[index_of(a)][index_of(b)];
}

SubstitutionMatrix build_substitution_matrix(
    const std::map<std::string, std::string>& library,
    const FingerprintParams& params) {
  std::vector<std::string> vocab;
  std::vector<Fingerprint> fps;
  for (const auto& [name, smiles] : library) {
    vocab.push_back(name);
    try {
      fps.push_back(ecfp(parse_smiles(smiles), params));
    } catch (const std::exception& e) {
      throw SubstitutionError("entry '" + name + "': " + e.what());
    }
  }
  const std::size_t n = vocab.size();
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sim[i][j] = sim[j][i] = tanimoto(fps[i], fps[j]);
  return SubstitutionMatrix(std::move(vocab), std::move(sim));
}

void save_matrix_csv(const SubstitutionMatrix& matrix, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SubstitutionError("cannot open '" + path + "' for writing");
  for (const std::string& name : matrix.vocab()) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.vocab()[i];
    for (std::size_t j = 0; j < matrix.size(); ++j)
      out << ',' << format_entry(matrix.similarity_at(i, j));
    out << '\n';
  }
}

SubstitutionMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SubstitutionError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw SubstitutionError("empty matrix file");

  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
  };

  std::vector<std::string> header = split(line);
  if (header.empty() || !header.front().empty())
    throw SubstitutionError("malformed header row");
  std::vector<std::string> vocab(header.begin() + 1, header.end());

  std::vector<std::vector<double>> sim;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (fields.size() != vocab.size() + 1)
      throw SubstitutionError("row has wrong number of columns");
    if (fields[0] != vocab[sim.size()])
      throw SubstitutionError("row label '" + fields[0] +
                              "' does not match header order");
    std::vector<double> row;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      try {
        row.push_back(std::stod(fields[j]));
      } catch (...) {
        throw SubstitutionError("non-numeric entry '" + fields[j] + "'");
      }
    }
    sim.push_back(std::move(row));
  }
  return SubstitutionMatrix(std::move(vocab), std::move(sim));
}

std::string matrix_to_json(const SubstitutionMatrix& matrix) {
  nlohmann::json j;
  j["vocab"] = matrix.vocab();
  j["sim"] = nlohmann::json::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < matrix.size(); ++k)
      row.push_back(matrix.similarity_at(i, k));
    j["sim"].push_back(std::move(row));
  }
  return j.dump(2);
}

SubstitutionMatrix matrix_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw SubstitutionError(std::string("bad matrix JSON: ") + e.what());
  }
  std::vector<std::string> vocab = j.at("vocab").get<std::vector<std::string>>();
  std::vector<std::vector<double>> sim =
      j.at("sim").get<std::vector<std::vector<double>>>();
  return SubstitutionMatrix(std::move(vocab), std::move(sim));
}

}  // namespace macrograph
