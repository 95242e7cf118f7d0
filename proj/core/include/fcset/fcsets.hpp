#pragma once

#include <array>
#include <optional>
#include <string>

#include "fcset/bitset.hpp"
#include "fcset/fusion.hpp"

namespace fcs {

/// A fusion-closed set of primaries (contains the vacuum, closed under the
/// fusion product). Represented as a bitset over primary indices.
using FCSet = Bitset;

/// True iff the vacuum-containing subset is closed under fusion.
bool is_fc(const Bitset& subset, const ModularData& m);

/// Smallest FC set containing the subset (the vacuum is added automatically).
FCSet closure(Bitset subset, const ModularData& m);

/// The dual set {p : rho_p(alpha) = d_alpha for all alpha in g}; verified to
/// be an FC set with dual(dual(g)) = g.
FCSet dual_set(const FCSet& g, const ModularData& m);

/// The complete lattice of FC sets, deduplicated and sorted by cardinality
/// then bitset value, with the Hasse covering relation.
struct FCLattice {
  std::vector<FCSet> sets;
  std::vector<std::array<int, 2>> hasse;  // (lower, upper) cover pairs

  int index_of(const FCSet& g) const;  // -1 when absent
  int bottom() const;                  // index of {vacuum}
  int top() const;                     // index of the full set
};

/// Breadth-first closure enumeration starting from {vacuum}; throws
/// PreconditionError when the configured budget is exceeded.
FCLattice enumerate_fcsets(const ModularData& m, const RunConfig& cfg = default_config());

inline FCSet meet(const FCSet& g, const FCSet& h) { return g & h; }
/// Join via duality: dual(dual(g) & dual(h)).
FCSet join(const FCSet& g, const FCSet& h, const ModularData& m);

struct LatticeProps {
  bool is_modular = true;
  bool is_distributive = true;
  // witnesses are triples of lattice indices when a law fails
  std::optional<std::array<int, 3>> modular_witness;
  std::optional<std::array<int, 3>> distributive_witness;
};

LatticeProps lattice_props(const FCLattice& lat, const ModularData& m);

/// Opt-in O(n^6) check of the Arguesian law.
bool arguesian_check(const FCLattice& lat, const ModularData& m,
                     std::optional<std::array<int, 6>>* witness = nullptr);

/// Render a set as {label,label,...} for reports.
std::string set_label(const FCSet& g, const ModularData& m);

}  // namespace fcs
