#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace macrograph {

enum class Chirality { None, Clockwise, CounterClockwise };
enum class BondOrder { Single, Double, Triple, Aromatic };
enum class CisTrans { None, Up, Down };

struct Atom {
  int index = 0;
  std::string element;
  int isotope = 0;        // 0 = unspecified
  int charge = 0;
  int explicit_h = -1;    // -1 = not a bracket atom / unspecified
  bool aromatic = false;
  Chirality chirality = Chirality::None;

  bool is_bracket() const { return explicit_h >= 0; }
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
  CisTrans cis_trans = CisTrans::None;
};

struct MolecularGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<std::vector<int>> adjacency;  // atom -> incident bond indices

  const Atom& other_end(const Bond& bond, int atom) const {
    return atoms[bond.a == atom ? bond.b : bond.a];
  }
};

enum class SmilesErrorKind {
  UnbalancedParenthesis,
  UnmatchedRingClosure,
  UnknownElement,
  MalformedBracketAtom,
  DanglingBondSymbol,
};

class SmilesError : public std::runtime_error {
 public:
  SmilesError(SmilesErrorKind kind, std::size_t offset, const std::string& what);

  SmilesErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  SmilesErrorKind kind_;
  std::size_t offset_;
};

MolecularGraph parse_smiles(std::string_view text);

// Bracket atoms report their explicit H count; organic-subset atoms get
// default valence minus the bond order sum (aromatic bonds count 1.5,
// the result is floored), clamped at zero.
int implicit_hydrogen_count(const Atom& atom, const MolecularGraph& graph);

// 0 when the symbol is not a recognized element.
int atomic_number(std::string_view element);

}  // namespace macrograph
