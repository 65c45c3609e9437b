#include "testlib.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace macrograph::testlib {

namespace {

MacroGraph make_graph(const std::vector<std::string>& labels,
                      const std::vector<std::pair<int, int>>& edges,
                      const std::string& edge_label = "b") {
  MacroGraph g;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    g.nodes.push_back({i, labels[i], {}});
  for (const auto& [u, v] : edges)
    g.edges.push_back({std::min(u, v), std::max(u, v), edge_label, {}});
  std::sort(g.edges.begin(), g.edges.end(),
            [](const MacroEdge& a, const MacroEdge& b) {
              return std::pair{a.u, a.v} < std::pair{b.u, b.v};
            });
  return g;
}

}  // namespace

std::map<std::string, std::string> reference_library() {
  return {
      {"Glc", "OC[C@H]1OC(O)[C@H](O)[C@@H](O)[C@@H]1O"},
      {"Xyl", "O[C@@H]1COC(O)[C@H](O)[C@H]1O"},
      {"Fuc", "C[C@@H]1OC(O)[C@H](O)[C@H](O)[C@H]1O"},
      {"a", "C[C@H](OC)CC"},   // alpha glycosidic bond (S)
      {"b", "C[C@@H](OC)CC"},  // beta glycosidic bond (R)
      {"u", "CC(OC)CC"},       // stereochemistry unspecified
  };
}

ReferenceFamily reference_family() {
  ReferenceFamily f;
  const std::vector<std::pair<int, int>> path = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  const std::vector<std::string> all_glc(6, "Glc");

  f.L = make_graph(all_glc, path);
  auto cycle = path;
  cycle.push_back({0, 5});
  f.M = make_graph(all_glc, cycle);
  // node 5 re-attached to node 2 instead of node 4
  f.B1 = make_graph(all_glc, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}});
  // nodes 4 and 5 both re-attached to node 2
  f.B2 = make_graph(all_glc, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}});

  std::vector<std::string> labels = all_glc;
  labels[2] = "Xyl";
  f.L_glc_xyl = make_graph(labels, path);
  labels[4] = "Fuc";
  f.L_glc_xyl_fuc = make_graph(labels, path);

  std::vector<std::string> b_labels(6, "Glc");
  b_labels[1] = "Xyl";
  b_labels[3] = "Fuc";
  b_labels[4] = "Fuc";
  f.B_glc_xyl_fuc = make_graph(b_labels, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}});
  return f;
}

LabelDistance injected_node_distance() {
  return [](const std::string& a, const std::string& b) -> double {
    if (a == b) return 0.0;
    const auto pair = std::minmax(a, b);
    if (pair.first == "Glc" && pair.second == "Xyl") return kDistGlcXyl;
    if (pair.first == "Fuc" && pair.second == "Glc") return kDistGlcFuc;
    return 1.0;
  };
}

LabelDistance zero_edge_distance() {
  return [](const std::string&, const std::string&) { return 0.0; };
}

double table_a1_expected(FamilyRow row, double c_indel, double c_sub) {
  const double xyl = std::min(c_sub * kDistGlcXyl, 6.0 * c_indel);
  const double fuc = std::min(c_sub * kDistGlcFuc, 6.0 * c_indel);
  switch (row) {
    case FamilyRow::L: return 0.0;
    case FamilyRow::M: return c_indel;
    case FamilyRow::B1: return 2.0 * c_indel;
    case FamilyRow::B2: return 4.0 * c_indel;
    case FamilyRow::LGlcXyl: return xyl;
    case FamilyRow::LGlcXylFuc: return xyl + fuc;
  }
  return 0.0;
}

MacroGraph random_macrograph(std::uint64_t seed, int n, double edge_density,
                             const std::vector<std::string>& vocab,
                             const std::vector<std::string>& edge_vocab) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MacroGraph g;
  for (int i = 0; i < n; ++i) {
    const std::string& label = vocab[rng() % vocab.size()];
    g.nodes.push_back({i, label, {}});
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unit(rng) < edge_density)
        g.edges.push_back({u, v, edge_vocab[rng() % edge_vocab.size()], {}});
  return g;
}

RandomMolecule random_molecule(std::mt19937_64& rng, int n_atoms) {
  static const std::vector<std::string> kElements = {"C", "C", "C", "N", "O", "S", "P"};
  RandomMolecule mol;
  for (int i = 0; i < n_atoms; ++i)
    mol.elements.push_back(kElements[rng() % kElements.size()]);
  // random tree, then up to two extra ring edges
  for (int i = 1; i < n_atoms; ++i) {
    const int parent = static_cast<int>(rng() % i);
    const int order = rng() % 4 == 0 ? 2 : 1;
    mol.bonds.emplace_back(parent, i, order);
  }
  int extra = n_atoms >= 4 ? static_cast<int>(rng() % 3) : 0;
  while (extra-- > 0) {
    const int a = static_cast<int>(rng() % n_atoms);
    const int b = static_cast<int>(rng() % n_atoms);
    if (a == b) continue;
    bool exists = false;
    for (const auto& [x, y, o] : mol.bonds)
      exists = exists || (std::minmax(x, y) == std::minmax(a, b));
    if (!exists) mol.bonds.emplace_back(a, b, 1);
  }
  return mol;
}

namespace {

// Two phases: a shuffled DFS first fixes the spanning tree and assigns ring
// closure digits to both endpoints of every back edge, then the tree is
// emitted with branch parentheses.
struct SmilesWriter {
  const RandomMolecule& mol;
  std::mt19937_64& rng;
  std::vector<std::vector<std::pair<int, int>>> adj;       // (neighbor, order)
  std::vector<std::vector<std::pair<int, int>>> children;  // ordered (child, order)
  std::vector<std::vector<std::pair<int, int>>> ring_digits;  // (digit, order)
  std::vector<bool> visited;
  std::set<std::pair<int, int>> ring_assigned;
  int next_digit = 1;

  SmilesWriter(const RandomMolecule& m, std::mt19937_64& r) : mol(m), rng(r) {
    const std::size_t n = mol.elements.size();
    adj.resize(n);
    children.resize(n);
    ring_digits.resize(n);
    visited.assign(n, false);
    for (const auto& [a, b, order] : mol.bonds) {
      adj[a].emplace_back(b, order);
      adj[b].emplace_back(a, order);
    }
  }

  static const char* bond_symbol(int order) {
    return order == 2 ? "=" : order == 3 ? "#" : "";
  }

  void explore(int atom, int from) {
    auto order = adj[atom];
    std::shuffle(order.begin(), order.end(), rng);
    for (const auto& [nbr, bond_order] : order) {
      if (nbr == from) continue;
      if (visited[nbr]) {
        const auto key = std::minmax(atom, nbr);
        if (ring_assigned.insert(key).second) {
          ring_digits[atom].emplace_back(next_digit, bond_order);
          ring_digits[nbr].emplace_back(next_digit, bond_order);
          ++next_digit;
        }
        continue;
      }
      visited[nbr] = true;
      children[atom].emplace_back(nbr, bond_order);
      explore(nbr, atom);
    }
  }

  void emit(int atom, std::string& out) const {
    out += mol.elements[atom];
    for (const auto& [digit, order] : ring_digits[atom]) {
      out += bond_symbol(order);
      if (digit > 9) out += "%";
      out += std::to_string(digit);
    }
    for (std::size_t i = 0; i < children[atom].size(); ++i) {
      const auto& [child, order] = children[atom][i];
      const bool branch = i + 1 < children[atom].size();
      if (branch) out += "(";
      out += bond_symbol(order);
      emit(child, out);
      if (branch) out += ")";
    }
  }

  std::string run() {
    const int root = static_cast<int>(rng() % mol.elements.size());
    visited[root] = true;
    explore(root, -1);
    std::string out;
    emit(root, out);
    return out;
  }
};

}  // namespace

std::string write_smiles(const RandomMolecule& mol, std::mt19937_64& rng) {
  return SmilesWriter(mol, rng).run();
}

bool graph_equal(const MacroGraph& a, const MacroGraph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  for (int i = 0; i < a.n(); ++i)
    if (a.nodes[i].index != b.nodes[i].index || a.nodes[i].label != b.nodes[i].label)
      return false;
  auto key = [](const MacroEdge& e) { return std::tuple{e.u, e.v, e.label}; };
  std::vector<std::tuple<int, int, std::string>> ea, eb;
  for (const MacroEdge& e : a.edges) ea.push_back(key(e));
  for (const MacroEdge& e : b.edges) eb.push_back(key(e));
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

std::string corrupt_macrofile(const std::string& valid_text, int kind,
                              std::mt19937_64& rng) {
  std::vector<std::string> lines;
  std::istringstream in(valid_text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  switch (kind % 5) {
    case 0: {  // drop a section header
      static const std::vector<std::string> headers = {"SMILES", "MONOMERS", "BONDS"};
      const std::string& victim = headers[rng() % headers.size()];
      std::string out;
      for (const std::string& l : lines)
        if (l != victim) out += l + "\n";
      return out;
    }
    case 1: {  // break the 1..n index sequence
      std::string out;
      bool in_monomers = false;
      for (const std::string& l : lines) {
        if (l == "MONOMERS") in_monomers = true;
        else if (l == "BONDS") in_monomers = false;
        if (in_monomers && l != "MONOMERS" && !l.empty()) {
          out += "999" + l + "\n";
          in_monomers = false;
          continue;
        }
        out += l + "\n";
      }
      return out;
    }
    case 2:  // self-loop
      return valid_text + "1 1 __selfloop__\n";
    case 3: {  // monomer with a name missing from the SMILES section
      std::string out;
      for (const std::string& l : lines) {
        out += l + "\n";
        if (l == "MONOMERS") out += "1 __no_such_smiles__\n";
      }
      return out;
    }
    default:  // duplicate a node index
      return valid_text.substr(0, valid_text.find("BONDS")) +
             "1 __dup__\nBONDS\n";
  }
}

}  // namespace macrograph::testlib
