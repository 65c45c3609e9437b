#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "macrograph/fingerprint.hpp"

namespace macrograph {

// Three-section plain-text description of one macromolecule: the SMILES of
// every distinct monomer/bond, the numbered monomer positions, and the
// position pairs joined by each bond.
struct MacroFile {
  std::map<std::string, std::string> smiles_section;
  std::map<int, std::string> monomers_section;                  // 1..n
  std::map<std::pair<int, int>, std::string> bonds_section;     // (min, max)
};

struct MacroNode {
  int index = 0;  // 0-based
  std::string label;
  std::vector<double> attr;
};

struct MacroEdge {
  int u = 0;
  int v = 0;  // u < v, 0-based
  std::string label;
  std::vector<double> attr;
};

struct MacroGraph {
  std::vector<MacroNode> nodes;
  std::vector<MacroEdge> edges;

  int n() const { return static_cast<int>(nodes.size()); }
  int m() const { return static_cast<int>(edges.size()); }
  bool featurized() const {
    return !nodes.empty() && !nodes.front().attr.empty();
  }
  std::vector<std::vector<int>> adjacency() const;  // node -> edge indices
};

struct FeaturizationScheme {
  enum class Kind { Fingerprint, OneHot };
  Kind kind = Kind::Fingerprint;
  FingerprintParams node_params{3, 128, true};
  FingerprintParams edge_params{3, 16, true};
  std::vector<std::string> node_vocab;  // one-hot only
  std::vector<std::string> edge_vocab;
};

struct GraphStats {
  int n_nodes = 0;
  int n_edges = 0;
  double density = 0.0;
};

enum class MacroFileErrorKind {
  MissingSection,
  DuplicateHeader,
  BadIndexLine,
  UnknownName,
  DuplicateNodeIndex,
  DuplicateBond,
  SelfLoop,
};

class MacroFileError : public std::runtime_error {
 public:
  MacroFileError(MacroFileErrorKind kind, int line, const std::string& what);

  MacroFileErrorKind kind() const { return kind_; }
  int line() const { return line_; }  // 1-based, 0 when not line-specific

 private:
  MacroFileErrorKind kind_;
  int line_;
};

MacroFile parse_macrofile(const std::string& text);
MacroGraph to_graph(const MacroFile& file);

// Canonical serialization; parse(write(g)) is graph-equal to g.
std::string write_macrofile(const MacroGraph& graph,
                            const std::map<std::string, std::string>& library);

MacroGraph featurize(const MacroGraph& graph, const FeaturizationScheme& scheme,
                     const std::map<std::string, std::string>& smiles_library);

GraphStats graph_stats(const MacroGraph& graph);

std::string graph_to_json(const MacroGraph& graph);

}  // namespace macrograph
