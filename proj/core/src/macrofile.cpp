#include "macrograph/macrofile.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace macrograph {

namespace {

const char* error_kind_name(MacroFileErrorKind kind) {
  switch (kind) {
    case MacroFileErrorKind::MissingSection: return "MissingSection";
    case MacroFileErrorKind::DuplicateHeader: return "DuplicateHeader";
    case MacroFileErrorKind::BadIndexLine: return "BadIndexLine";
    case MacroFileErrorKind::UnknownName: return "UnknownName";
    case MacroFileErrorKind::DuplicateNodeIndex: return "DuplicateNodeIndex";
    case MacroFileErrorKind::DuplicateBond: return "DuplicateBond";
    case MacroFileErrorKind::SelfLoop: return "SelfLoop";
  }
  return "MacroFileError";
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

bool parse_index(const std::string& field, int& out) {
  if (field.empty()) return false;
  for (char c : field)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  try {
    out = std::stoi(field);
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

MacroFileError::MacroFileError(MacroFileErrorKind kind, int line,
                               const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) +
                         (line > 0 ? " at line " + std::to_string(line) : "") +
                         ": " + what),
      kind_(kind),
      line_(line) {}

MacroFile parse_macrofile(const std::string& text) {
  MacroFile file;
  enum class Section { None, Smiles, Monomers, Bonds };
  Section section = Section::None;
  bool seen_smiles = false, seen_monomers = false, seen_bonds = false;
  std::map<int, int> monomer_lines;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    const std::string header = upper(line);
    if (header == "SMILES" || header == "MONOMERS" || header == "BONDS") {
      if ((header == "SMILES" && seen_smiles) ||
          (header == "MONOMERS" && seen_monomers) ||
          (header == "BONDS" && seen_bonds))
        throw MacroFileError(MacroFileErrorKind::DuplicateHeader, line_no,
                             "section '" + header + "' appears twice");
      if (header == "SMILES") {
        section = Section::Smiles;
        seen_smiles = true;
      } else if (header == "MONOMERS") {
        if (!seen_smiles)
          throw MacroFileError(MacroFileErrorKind::MissingSection, line_no,
                               "MONOMERS before SMILES");
        section = Section::Monomers;
        seen_monomers = true;
      } else {
        if (!seen_monomers)
          throw MacroFileError(MacroFileErrorKind::MissingSection, line_no,
                               "BONDS before MONOMERS");
        section = Section::Bonds;
        seen_bonds = true;
      }
      continue;
    }

    const std::vector<std::string> fields = split_fields(line);
    switch (section) {
      case Section::None:
        throw MacroFileError(MacroFileErrorKind::MissingSection, line_no,
                             "content before SMILES header");
      case Section::Smiles: {
        if (fields.size() != 2)
          throw MacroFileError(MacroFileErrorKind::BadIndexLine, line_no,
                               "expected 'name smiles'");
        if (!file.smiles_section.emplace(fields[0], fields[1]).second)
          throw MacroFileError(MacroFileErrorKind::DuplicateHeader, line_no,
                               "duplicate SMILES entry '" + fields[0] + "'");
        break;
      }
      case Section::Monomers: {
        int index = 0;
        if (fields.size() != 2 || !parse_index(fields[0], index))
          throw MacroFileError(MacroFileErrorKind::BadIndexLine, line_no,
                               "expected 'index name'");
        if (!file.smiles_section.count(fields[1]))
          throw MacroFileError(MacroFileErrorKind::UnknownName, line_no,
                               "monomer name '" + fields[1] + "' has no SMILES");
        if (!file.monomers_section.emplace(index, fields[1]).second)
          throw MacroFileError(MacroFileErrorKind::DuplicateNodeIndex, line_no,
                               "node index " + std::to_string(index) + " repeated");
        monomer_lines[index] = line_no;
        break;
      }
      case Section::Bonds: {
        int i = 0, j = 0;
        if (fields.size() != 3 || !parse_index(fields[0], i) ||
            !parse_index(fields[1], j))
          throw MacroFileError(MacroFileErrorKind::BadIndexLine, line_no,
                               "expected 'i j name'");
        if (i == j)
          throw MacroFileError(MacroFileErrorKind::SelfLoop, line_no,
                               "bond joins node " + std::to_string(i) +
                                   " to itself");
        if (!file.monomers_section.count(i) || !file.monomers_section.count(j))
          throw MacroFileError(MacroFileErrorKind::BadIndexLine, line_no,
                               "bond references unknown node index");
        if (!file.smiles_section.count(fields[2]))
          throw MacroFileError(MacroFileErrorKind::UnknownName, line_no,
                               "bond name '" + fields[2] + "' has no SMILES");
        const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
        if (!file.bonds_section.emplace(key, fields[2]).second)
          throw MacroFileError(MacroFileErrorKind::DuplicateBond, line_no,
                               "bond pair repeated");
        break;
      }
    }
  }

  if (!seen_smiles)
    throw MacroFileError(MacroFileErrorKind::MissingSection, 0, "no SMILES section");
  if (!seen_monomers)
    throw MacroFileError(MacroFileErrorKind::MissingSection, 0,
                         "no MONOMERS section");
  if (!seen_bonds)
    throw MacroFileError(MacroFileErrorKind::MissingSection, 0, "no BONDS section");

  // node indices must be exactly 1..n
  int expected = 1;
  for (const auto& [index, name] : file.monomers_section) {
    if (index != expected)
      throw MacroFileError(MacroFileErrorKind::BadIndexLine,
                           monomer_lines[index],
                           "node indices must be 1..n; gap at " +
                               std::to_string(expected));
    ++expected;
  }
  return file;
}

MacroGraph to_graph(const MacroFile& file) {
  MacroGraph graph;
  for (const auto& [index, name] : file.monomers_section)
    graph.nodes.push_back({index - 1, name, {}});
  for (const auto& [pair, name] : file.bonds_section)
    graph.edges.push_back({pair.first - 1, pair.second - 1, name, {}});
  return graph;
}

std::vector<std::vector<int>> MacroGraph::adjacency() const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back(static_cast<int>(i));
    adj[edges[i].v].push_back(static_cast<int>(i));
  }
  return adj;
}

std::string write_macrofile(const MacroGraph& graph,
                            const std::map<std::string, std::string>& library) {
  std::map<std::string, std::string> used;
  auto require = [&](const std::string& label) {
    auto it = library.find(label);
    if (it == library.end())
      throw MacroFileError(MacroFileErrorKind::UnknownName, 0,
                           "label '" + label + "' not in SMILES library");
    used.emplace(label, it->second);
  };
  for (const MacroNode& node : graph.nodes) require(node.label);
  for (const MacroEdge& edge : graph.edges) require(edge.label);

  std::ostringstream out;
  out << "SMILES\n";
  for (const auto& [name, smiles] : used) out << name << ' ' << smiles << '\n';
  out << "MONOMERS\n";
  std::vector<MacroNode> nodes = graph.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const MacroNode& a, const MacroNode& b) { return a.index < b.index; });
  for (const MacroNode& node : nodes)
    out << node.index + 1 << ' ' << node.label << '\n';
  out << "BONDS\n";
  std::vector<MacroEdge> edges = graph.edges;
  std::sort(edges.begin(), edges.end(), [](const MacroEdge& a, const MacroEdge& b) {
    return std::pair{a.u, a.v} < std::pair{b.u, b.v};
  });
  for (const MacroEdge& edge : edges)
    out << edge.u + 1 << ' ' << edge.v + 1 << ' ' << edge.label << '\n';
  return out.str();
}

namespace {

std::vector<double> fingerprint_attr(const std::string& label,
                                     const std::map<std::string, std::string>& library,
                                     const FingerprintParams& params) {
  auto it = library.find(label);
  if (it == library.end())
    throw MacroFileError(MacroFileErrorKind::UnknownName, 0,
                         "no SMILES for label '" + label + "'");
  MolecularGraph mol;
  try {
    mol = parse_smiles(it->second);
  } catch (const SmilesError& e) {
    throw MacroFileError(MacroFileErrorKind::UnknownName, 0,
                         "SMILES for '" + label + "' failed to parse: " + e.what());
  }
  const Fingerprint fp = ecfp(mol, params);
  std::vector<double> attr(params.n_bits);
  for (int i = 0; i < params.n_bits; ++i) attr[i] = fp.test(i) ? 1.0 : 0.0;
  return attr;
}

std::vector<double> one_hot_attr(const std::string& label,
                                 const std::vector<std::string>& vocab) {
  const auto it = std::find(vocab.begin(), vocab.end(), label);
  if (it == vocab.end())
    throw MacroFileError(MacroFileErrorKind::UnknownName, 0,
                         "label '" + label + "' not in vocabulary");
  std::vector<double> attr(vocab.size(), 0.0);
  attr[static_cast<std::size_t>(it - vocab.begin())] = 1.0;
  return attr;
}

}  // namespace

MacroGraph featurize(const MacroGraph& graph, const FeaturizationScheme& scheme,
                     const std::map<std::string, std::string>& smiles_library) {
  MacroGraph out = graph;
  if (scheme.kind == FeaturizationScheme::Kind::Fingerprint) {
    std::map<std::string, std::vector<double>> node_cache, edge_cache;
    for (MacroNode& node : out.nodes) {
      auto it = node_cache.find(node.label);
      if (it == node_cache.end())
        it = node_cache
                 .emplace(node.label, fingerprint_attr(node.label, smiles_library,
                                                       scheme.node_params))
                 .first;
      node.attr = it->second;
    }
    for (MacroEdge& edge : out.edges) {
      auto it = edge_cache.find(edge.label);
      if (it == edge_cache.end())
        it = edge_cache
                 .emplace(edge.label, fingerprint_attr(edge.label, smiles_library,
                                                       scheme.edge_params))
                 .first;
      edge.attr = it->second;
    }
  } else {
    for (MacroNode& node : out.nodes)
      node.attr = one_hot_attr(node.label, scheme.node_vocab);
    for (MacroEdge& edge : out.edges)
      edge.attr = one_hot_attr(edge.label, scheme.edge_vocab);
  }
  return out;
}

GraphStats graph_stats(const MacroGraph& graph) {
  GraphStats stats;
  stats.n_nodes = graph.n();
  stats.n_edges = graph.m();
  if (stats.n_nodes >= 2)
    stats.density = 2.0 * stats.n_edges /
                    (static_cast<double>(stats.n_nodes) * (stats.n_nodes - 1));
  return stats;
}

std::string graph_to_json(const MacroGraph& graph) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const MacroNode& node : graph.nodes) {
    nlohmann::json n{{"id", node.index}, {"label", node.label}};
    if (!node.attr.empty()) n["attr"] = node.attr;
    j["nodes"].push_back(std::move(n));
  }
  j["edges"] = nlohmann::json::array();
  for (const MacroEdge& edge : graph.edges) {
    nlohmann::json e{{"u", edge.u}, {"v", edge.v}, {"label", edge.label}};
    if (!edge.attr.empty()) e["attr"] = edge.attr;
    j["edges"].push_back(std::move(e));
  }
  return j.dump(2);
}

}  // namespace macrograph
