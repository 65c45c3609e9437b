#include "macrograph/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "macrograph/detail/hash.hpp"

namespace macrograph {

namespace {

using detail::hash_combine;
using detail::mix64;

// Bonds on a cycle are exactly the non-bridge edges; find bridges by DFS.
std::vector<bool> ring_bond_flags(const MolecularGraph& graph) {
  const int n = static_cast<int>(graph.atoms.size());
  std::vector<bool> ring(graph.bonds.size(), true);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent_bond) {
    disc[v] = low[v] = timer++;
    for (int bond_idx : graph.adjacency[v]) {
      if (bond_idx == parent_bond) continue;
      const Bond& bond = graph.bonds[bond_idx];
      const int to = bond.a == v ? bond.b : bond.a;
      if (disc[to] >= 0) {
        low[v] = std::min(low[v], disc[to]);
      } else {
        dfs(to, bond_idx);
        low[v] = std::min(low[v], low[to]);
        if (low[to] > disc[v]) ring[bond_idx] = false;  // bridge
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, -1);
  return ring;
}

int bond_order_code(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1;
    case BondOrder::Double: return 2;
    case BondOrder::Triple: return 3;
    case BondOrder::Aromatic: return 4;
  }
  return 1;
}

std::uint64_t initial_invariant(const Atom& atom, const MolecularGraph& graph,
                                bool in_ring, bool use_stereo) {
  std::uint64_t h = 0x45435046u;  // domain separator
  h = hash_combine(h, static_cast<std::uint64_t>(atomic_number(atom.element)));
  h = hash_combine(h, graph.adjacency[atom.index].size());
  h = hash_combine(h,
                   static_cast<std::uint64_t>(implicit_hydrogen_count(atom, graph)));
  h = hash_combine(h, static_cast<std::uint64_t>(atom.charge + 16));
  h = hash_combine(h, in_ring ? 1u : 0u);
  h = hash_combine(h, atom.aromatic ? 1u : 0u);
  if (use_stereo) h = hash_combine(h, static_cast<std::uint64_t>(atom.chirality));
  return h;
}

}  // namespace

int Fingerprint::popcount() const {
  int total = 0;
  for (std::uint64_t word : words_) total += std::popcount(word);
  return total;
}

std::string Fingerprint::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(static_cast<std::size_t>(params_.n_bits) / 4);
  for (int nibble = 0; nibble < params_.n_bits / 4; ++nibble) {
    int value = 0;
    for (int i = 0; i < 4; ++i)
      if (test(nibble * 4 + i)) value |= 8 >> i;
    out.push_back(digits[value]);
  }
  return out;
}

Fingerprint ecfp(const MolecularGraph& graph, const FingerprintParams& params) {
  if (graph.atoms.empty()) throw FingerprintError("EmptyMolecule");
  if (params.n_bits < 8 || (params.n_bits & (params.n_bits - 1)) != 0)
    throw FingerprintError("n_bits must be a power of two >= 8");
  if (params.radius < 0 || params.radius > 10)
    throw FingerprintError("radius must be in [0, 10]");

  const int n = static_cast<int>(graph.atoms.size());
  const std::vector<bool> ring_bonds = ring_bond_flags(graph);
  std::vector<bool> in_ring(n, false);
  for (std::size_t i = 0; i < graph.bonds.size(); ++i)
    if (ring_bonds[i]) in_ring[graph.bonds[i].a] = in_ring[graph.bonds[i].b] = true;

  std::vector<std::uint64_t> ids(n);
  for (int v = 0; v < n; ++v)
    ids[v] = initial_invariant(graph.atoms[v], graph, in_ring[v], params.use_stereo);

  // coverage[v] = atoms within the current radius of v
  std::vector<std::vector<bool>> coverage(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) coverage[v][v] = true;

  struct Candidate {
    int radius;
    std::uint64_t id;
  };
  // environment atom set -> smallest (radius, id) seen for that set
  std::map<std::vector<bool>, Candidate> environments;
  auto offer = [&](const std::vector<bool>& cover, int radius, std::uint64_t id) {
    auto [it, inserted] = environments.try_emplace(cover, Candidate{radius, id});
    if (!inserted) {
      Candidate& held = it->second;
      if (radius < held.radius || (radius == held.radius && id < held.id))
        held = Candidate{radius, id};
    }
  };

  for (int v = 0; v < n; ++v) offer(coverage[v], 0, ids[v]);

  for (int r = 1; r <= params.radius; ++r) {
    std::vector<std::uint64_t> next_ids(n);
    std::vector<std::vector<bool>> next_coverage = coverage;
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<int, std::uint64_t>> neighborhood;
      for (int bond_idx : graph.adjacency[v]) {
        const Bond& bond = graph.bonds[bond_idx];
        const int to = bond.a == v ? bond.b : bond.a;
        neighborhood.emplace_back(bond_order_code(bond.order), ids[to]);
        for (int u = 0; u < n; ++u)
          if (coverage[to][u]) next_coverage[v][u] = true;
      }
      std::sort(neighborhood.begin(), neighborhood.end());
      std::uint64_t h = hash_combine(static_cast<std::uint64_t>(r), ids[v]);
      for (const auto& [code, nbr_id] : neighborhood) {
        h = hash_combine(h, static_cast<std::uint64_t>(code));
        h = hash_combine(h, nbr_id);
      }
      next_ids[v] = h;
    }
    ids = std::move(next_ids);
    coverage = std::move(next_coverage);
    for (int v = 0; v < n; ++v) offer(coverage[v], r, ids[v]);
  }

  std::vector<std::uint64_t> words((static_cast<std::size_t>(params.n_bits) + 63) / 64,
                                   0);
  for (const auto& [cover, candidate] : environments) {
    const std::uint64_t bit = candidate.id % static_cast<std::uint64_t>(params.n_bits);
    words[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  return Fingerprint(params, std::move(words));
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (!(a.params() == b.params())) throw FingerprintError("ParamMismatch");
  int inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    inter += std::popcount(a.words()[i] & b.words()[i]);
    uni += std::popcount(a.words()[i] | b.words()[i]);
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

double tanimoto_distance(const Fingerprint& a, const Fingerprint& b) {
  return 1.0 - tanimoto(a, b);
}

std::vector<SimilarityStats> similarity_stats(
    const std::map<std::string, std::string>& library,
    const std::vector<FingerprintParams>& params_grid) {
  if (library.size() < 2)
    throw FingerprintError("similarity_stats needs at least 2 library entries");

  std::vector<std::pair<std::string, MolecularGraph>> molecules;
  molecules.reserve(library.size());
  for (const auto& [name, smiles] : library) {
    try {
      molecules.emplace_back(name, parse_smiles(smiles));
    } catch (const SmilesError& e) {
      throw FingerprintError("library entry '" + name + "': " + e.what());
    }
  }

  std::vector<SimilarityStats> out;
  for (const FingerprintParams& params : params_grid) {
    std::vector<Fingerprint> fps;
    fps.reserve(molecules.size());
    for (const auto& [name, mol] : molecules) fps.push_back(ecfp(mol, params));

    SimilarityStats stats;
    stats.params = params;
    stats.histogram.assign(50, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < fps.size(); ++i) {
      for (std::size_t j = i + 1; j < fps.size(); ++j) {
        const double t = tanimoto(fps[i], fps[j]);
        sum += t;
        sum_sq += t * t;
        int bin = static_cast<int>(t * 50.0);
        stats.histogram[std::min(bin, 49)] += 1;
        ++stats.n_pairs;
      }
    }
    stats.mean = sum / stats.n_pairs;
    const double var = sum_sq / stats.n_pairs - stats.mean * stats.mean;
    stats.stddev = var > 0 ? std::sqrt(var) : 0.0;
    out.push_back(std::move(stats));
  }
  return out;
}

}  // namespace macrograph
