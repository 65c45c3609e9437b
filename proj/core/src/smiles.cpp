#include "macrograph/smiles.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <utility>

namespace macrograph {

namespace {

constexpr std::array<const char*, 119> kElements = {
    "?",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

const char* error_kind_name(SmilesErrorKind kind) {
  switch (kind) {
    case SmilesErrorKind::UnbalancedParenthesis: return "UnbalancedParenthesis";
    case SmilesErrorKind::UnmatchedRingClosure: return "UnmatchedRingClosure";
    case SmilesErrorKind::UnknownElement: return "UnknownElement";
    case SmilesErrorKind::MalformedBracketAtom: return "MalformedBracketAtom";
    case SmilesErrorKind::DanglingBondSymbol: return "DanglingBondSymbol";
  }
  return "SmilesError";
}

struct PendingBond {
  BondOrder order = BondOrder::Single;
  CisTrans cis_trans = CisTrans::None;
  bool set = false;
  std::size_t offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolecularGraph run() {
    if (text_.empty())
      fail(SmilesErrorKind::UnknownElement, 0, "empty SMILES");
    while (pos_ < text_.size()) step();
    if (pending_.set)
      fail(SmilesErrorKind::DanglingBondSymbol, pending_.offset,
           "bond symbol at end of input");
    if (!branch_stack_.empty())
      fail(SmilesErrorKind::UnbalancedParenthesis, branch_offsets_.back(),
           "unclosed branch");
    if (!open_rings_.empty())
      fail(SmilesErrorKind::UnmatchedRingClosure, open_rings_.begin()->second.offset,
           "ring closure never closed");
    graph_.adjacency.resize(graph_.atoms.size());
    for (std::size_t i = 0; i < graph_.bonds.size(); ++i) {
      graph_.adjacency[graph_.bonds[i].a].push_back(static_cast<int>(i));
      graph_.adjacency[graph_.bonds[i].b].push_back(static_cast<int>(i));
    }
    return std::move(graph_);
  }

 private:
  struct OpenRing {
    int atom;
    PendingBond bond;
    std::size_t offset;
  };

  [[noreturn]] void fail(SmilesErrorKind kind, std::size_t offset,
                         const std::string& what) {
    throw SmilesError(kind, offset, what);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void step() {
    const char c = text_[pos_];
    switch (c) {
      case '-': set_bond(BondOrder::Single, CisTrans::None); return;
      case '=': set_bond(BondOrder::Double, CisTrans::None); return;
      case '#': set_bond(BondOrder::Triple, CisTrans::None); return;
      case ':': set_bond(BondOrder::Aromatic, CisTrans::None); return;
      case '/': set_bond(BondOrder::Single, CisTrans::Up); return;
      case '\\': set_bond(BondOrder::Single, CisTrans::Down); return;
      case '(': open_branch(); return;
      case ')': close_branch(); return;
      case '.': component_break(); return;
      case '%': ring_closure_two_digit(); return;
      case '[': bracket_atom(); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ring_closure(c - '0', pos_);
      ++pos_;
      return;
    }
    organic_atom();
  }

  void set_bond(BondOrder order, CisTrans ct) {
    if (pending_.set)
      fail(SmilesErrorKind::DanglingBondSymbol, pos_, "consecutive bond symbols");
    if (prev_atom_ < 0)
      fail(SmilesErrorKind::DanglingBondSymbol, pos_, "bond symbol before any atom");
    pending_ = {order, ct, true, pos_};
    ++pos_;
  }

  void open_branch() {
    if (prev_atom_ < 0)
      fail(SmilesErrorKind::UnbalancedParenthesis, pos_, "branch before any atom");
    if (pending_.set)
      fail(SmilesErrorKind::DanglingBondSymbol, pending_.offset,
           "bond symbol before branch open");
    branch_stack_.push_back(prev_atom_);
    branch_offsets_.push_back(pos_);
    ++pos_;
  }

  void close_branch() {
    if (branch_stack_.empty())
      fail(SmilesErrorKind::UnbalancedParenthesis, pos_, "unmatched ')'");
    if (pending_.set)
      fail(SmilesErrorKind::DanglingBondSymbol, pending_.offset,
           "bond symbol before branch close");
    prev_atom_ = branch_stack_.back();
    branch_stack_.pop_back();
    branch_offsets_.pop_back();
    ++pos_;
  }

  void component_break() {
    if (pending_.set)
      fail(SmilesErrorKind::DanglingBondSymbol, pending_.offset,
           "bond symbol before '.'");
    prev_atom_ = -1;
    ++pos_;
  }

  void ring_closure_two_digit() {
    const std::size_t at = pos_;
    if (pos_ + 2 >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
      fail(SmilesErrorKind::UnmatchedRingClosure, at, "'%' needs two digits");
    ring_closure((text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0'), at);
    pos_ += 3;
  }

  void ring_closure(int number, std::size_t at) {
    if (prev_atom_ < 0)
      fail(SmilesErrorKind::UnmatchedRingClosure, at, "ring closure before any atom");
    const PendingBond bond_here = std::exchange(pending_, PendingBond{});
    auto it = open_rings_.find(number);
    if (it == open_rings_.end()) {
      open_rings_.emplace(number, OpenRing{prev_atom_, bond_here, at});
      return;
    }
    OpenRing open = it->second;
    open_rings_.erase(it);
    if (open.atom == prev_atom_)
      fail(SmilesErrorKind::UnmatchedRingClosure, at, "ring closure to same atom");
    PendingBond bond = bond_here;
    if (open.bond.set && bond_here.set &&
        (open.bond.order != bond_here.order ||
         open.bond.cis_trans != bond_here.cis_trans))
      fail(SmilesErrorKind::DanglingBondSymbol, at,
           "conflicting bond symbols on ring closure");
    if (!bond.set) bond = open.bond;
    add_bond(open.atom, prev_atom_, bond, at);
  }

  void add_bond(int a, int b, const PendingBond& pending, std::size_t at) {
    for (const Bond& existing : graph_.bonds)
      if ((existing.a == a && existing.b == b) || (existing.a == b && existing.b == a))
        fail(SmilesErrorKind::UnmatchedRingClosure, at, "duplicate bond");
    Bond bond;
    bond.a = a;
    bond.b = b;
    if (pending.set) {
      bond.order = pending.order;
      bond.cis_trans = pending.cis_trans;
    } else if (graph_.atoms[a].aromatic && graph_.atoms[b].aromatic) {
      bond.order = BondOrder::Aromatic;
    }
    graph_.bonds.push_back(bond);
  }

  int push_atom(Atom atom, std::size_t at) {
    atom.index = static_cast<int>(graph_.atoms.size());
    graph_.atoms.push_back(std::move(atom));
    const int idx = graph_.atoms.back().index;
    if (prev_atom_ >= 0)
      add_bond(prev_atom_, idx, std::exchange(pending_, PendingBond{}), at);
    else if (pending_.set)
      fail(SmilesErrorKind::DanglingBondSymbol, pending_.offset,
           "bond with no preceding atom");
    prev_atom_ = idx;
    return idx;
  }

  void organic_atom() {
    const std::size_t at = pos_;
    const char c = text_[pos_];
    Atom atom;
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      atom.element = "Cl";
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      atom.element = "Br";
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': case 'C': case 'N': case 'O': case 'P': case 'S':
        case 'F': case 'I':
          atom.element = std::string(1, c);
          break;
        case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
          atom.element = std::string(1, static_cast<char>(std::toupper(c)));
          atom.aromatic = true;
          break;
        default:
          fail(SmilesErrorKind::UnknownElement, at,
               std::string("unexpected character '") + c + "'");
      }
      ++pos_;
    }
    push_atom(std::move(atom), at);
  }

  int read_digits(int max_digits) {
    int value = 0;
    int read = 0;
    while (read < max_digits && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
      ++read;
    }
    return read ? value : -1;
  }

  void bracket_atom() {
    const std::size_t at = pos_;
    ++pos_;
    Atom atom;
    atom.explicit_h = 0;

    const int isotope = read_digits(3);
    if (isotope >= 0) {
      if (isotope == 0)
        fail(SmilesErrorKind::MalformedBracketAtom, at, "isotope must be positive");
      atom.isotope = isotope;
    }

    // element: two-letter, one-letter, or aromatic lowercase
    if (pos_ >= text_.size())
      fail(SmilesErrorKind::MalformedBracketAtom, at, "unterminated bracket atom");
    const std::size_t elem_at = pos_;
    if (std::isupper(static_cast<unsigned char>(peek()))) {
      std::string sym(1, text_[pos_++]);
      if (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_])) &&
          atomic_number(sym + text_[pos_]) > 0) {
        sym += text_[pos_++];
      }
      if (atomic_number(sym) == 0)
        fail(SmilesErrorKind::UnknownElement, elem_at, "unknown element '" + sym + "'");
      atom.element = sym;
    } else if (std::islower(static_cast<unsigned char>(peek()))) {
      std::string sym(1, text_[pos_]);
      if (pos_ + 1 < text_.size() && (sym == "s" || sym == "a") &&
          (text_[pos_ + 1] == 'e' || text_[pos_ + 1] == 's')) {
        const std::string two = sym + text_[pos_ + 1];
        if (two == "se" || two == "as") sym = two;
      }
      static const std::array<const char*, 8> kAromatic = {"b", "c", "n", "o",
                                                           "p", "s", "se", "as"};
      bool ok = false;
      for (const char* a : kAromatic) ok = ok || sym == a;
      if (!ok)
        fail(SmilesErrorKind::UnknownElement, elem_at,
             "unknown aromatic symbol '" + sym + "'");
      pos_ += sym.size();
      sym[0] = static_cast<char>(std::toupper(sym[0]));
      atom.element = sym;
      atom.aromatic = true;
    } else {
      fail(SmilesErrorKind::MalformedBracketAtom, pos_, "expected element symbol");
    }

    if (peek() == '@') {
      ++pos_;
      if (peek() == '@') {
        atom.chirality = Chirality::Clockwise;
        ++pos_;
      } else {
        atom.chirality = Chirality::CounterClockwise;
      }
      if (std::isupper(static_cast<unsigned char>(peek())) && peek() != 'H')
        fail(SmilesErrorKind::MalformedBracketAtom, pos_,
             "extended chirality classes are not supported");
    }

    if (peek() == 'H') {
      ++pos_;
      const int count = read_digits(1);
      atom.explicit_h = count >= 0 ? count : 1;
    }

    if (peek() == '+' || peek() == '-') {
      const int sign = peek() == '+' ? 1 : -1;
      const char sym = text_[pos_++];
      int magnitude = 1;
      const int digits = read_digits(1);
      if (digits >= 0) {
        magnitude = digits;
        if (magnitude == 0)
          fail(SmilesErrorKind::MalformedBracketAtom, pos_ - 1, "zero charge");
      } else {
        while (peek() == sym) {
          ++magnitude;
          ++pos_;
        }
      }
      if (magnitude > 9)
        fail(SmilesErrorKind::MalformedBracketAtom, at, "charge out of range");
      atom.charge = sign * magnitude;
    }

    if (peek() != ']')
      fail(SmilesErrorKind::MalformedBracketAtom, pos_,
           "unexpected content in bracket atom");
    ++pos_;
    push_atom(std::move(atom), at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  int prev_atom_ = -1;
  PendingBond pending_;
  std::vector<int> branch_stack_;
  std::vector<std::size_t> branch_offsets_;
  std::map<int, OpenRing> open_rings_;
};

double bond_order_value(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1.0;
    case BondOrder::Double: return 2.0;
    case BondOrder::Triple: return 3.0;
    case BondOrder::Aromatic: return 1.5;
  }
  return 1.0;
}

int default_valence(std::string_view element) {
  if (element == "B") return 3;
  if (element == "C") return 4;
  if (element == "N") return 3;
  if (element == "O") return 2;
  if (element == "P") return 3;
  if (element == "S") return 2;
  if (element == "F" || element == "Cl" || element == "Br" || element == "I")
    return 1;
  return 0;
}

}  // namespace

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t offset,
                         const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) + " at offset " +
                         std::to_string(offset) + ": " + what),
      kind_(kind),
      offset_(offset) {}

int atomic_number(std::string_view element) {
  for (std::size_t z = 1; z < kElements.size(); ++z)
    if (element == kElements[z]) return static_cast<int>(z);
  return 0;
}

MolecularGraph parse_smiles(std::string_view text) { return Parser(text).run(); }

int implicit_hydrogen_count(const Atom& atom, const MolecularGraph& graph) {
  if (atom.is_bracket()) return atom.explicit_h;
  double order_sum = 0.0;
  for (int bond_idx : graph.adjacency[atom.index])
    order_sum += bond_order_value(graph.bonds[bond_idx].order);
  const int h =
      static_cast<int>(std::floor(default_valence(atom.element) - order_sum));
  return h > 0 ? h : 0;
}

}  // namespace macrograph
