#pragma once

#include "fcset/partition.hpp"

namespace fcs {

/// The center of an FC set: the classes of maximal extent. They form an
/// abelian group (identity = trivial class) acting on all classes by the
/// class product. Construction verifies both centrality criteria, the group
/// axioms, the central-character multiplicativity and the extent invariance
/// of the action, throwing IdentityError on any failure.
struct Center {
  ClassPartition parent;
  std::vector<int> central;                       // class indices, ascending
  int identity_pos = -1;                          // position of the trivial class
  std::vector<std::vector<int>> mult;             // positions: z1 * z2
  std::vector<std::vector<Cyclotomic>> char_table;  // [pos][member pos] = varpi_z(alpha)
  std::vector<std::vector<int>> action;           // [pos][class] = z * class

  int order() const { return (int)central.size(); }
  int pos_of_class(int cls) const;  // -1 when the class is not central
  int inverse(int pos) const;
  /// Multiplicative order of the central class at `pos`.
  int element_order(int pos) const;
};

Center center_of(const ClassPartition& p, const ModularData& m);

/// varpi_C(alpha) = ([[g-perp]]/[[C]]) alpha(C)/d_alpha, defined for every
/// class (central or not). `member_pos` indexes into p.members.
Cyclotomic central_character(const ClassPartition& p, int cls, int member_pos,
                             const ModularData& m);

/// Tests that every central character value is an algebraic integer, and the
/// Lagrange-style statement that [[g-perp]]/[[C]] is an algebraic integer.
/// Counterexamples become failing records with full witnesses.
Report conjecture_algint(const ClassPartition& p, const ModularData& m);

/// Subgroup of a center, as sorted positions into Center::central.
struct Subgroup {
  std::vector<int> pos;
  int order() const { return (int)pos.size(); }
};

/// All subgroups, by closure enumeration (centers are tiny).
std::vector<Subgroup> subgroups_of(const Center& c);
bool is_subgroup(const Center& c, const Subgroup& z);

/// Central quotient g/Z = {alpha in g : alpha(z) = d_alpha for all z in Z};
/// verified to be an FC set whose dual is the union of the classes in Z.
FCSet central_quotient(const FCSet& g, const Center& c, const Subgroup& z,
                       const ModularData& m);

/// Structure of the quotient: the xi-blocks of g, their extents, the Z-orbit
/// classes and the overlap pattern. All statements are verified exactly and
/// reported (see `checks`); hard inconsistencies throw IdentityError.
struct QuotientStructure {
  FCSet g;
  Subgroup z;
  FCSet quotient;
  std::vector<std::vector<Cyclotomic>> xi;  // characters of Z (xi[0] principal)
  std::vector<FCSet> g_xi;                  // matching blocks of g/Z
  Report checks;
};

QuotientStructure quotient_structure(const FCSet& g, const Center& c, const Subgroup& z,
                                     const ModularData& m);

/// A-extensions of g for an abelian group A given by invariant factors:
/// dual(dual(g)/Z) over subgroups Z of the center of the dual isomorphic
/// to A. Empty when no such subgroup exists.
std::vector<FCSet> central_extensions(const FCSet& g, const ModularData& m,
                                      const std::vector<int>& invariant_factors);

FCSet maximal_central_extension(const FCSet& g, const ModularData& m);

/// Both characterizations checked and required to agree: all classes central,
/// and all quantum dimensions in g equal to 1.
bool is_abelian(const FCSet& g, const ModularData& m);

struct ChainResult {
  bool value = false;
  std::vector<FCSet> chain;  // ascending certificate from {vacuum} to g
};

/// Nilpotency: g reachable from {vacuum} by central extensions. The chain of
/// intermediate FC sets is the certificate.
ChainResult is_nilpotent(const FCSet& g, const ModularData& m);

/// Solvability over the enumerated lattice: an ascending chain from {vacuum}
/// whose consecutive subset-extent ratios are prime powers (primes for the
/// supersolvable variant).
struct SolvabilityResult {
  ChainResult solvable;
  ChainResult supersolvable;
  bool extent_g_odd = false;       // parity observations for g and its dual
  bool extent_gperp_odd = false;
};

SolvabilityResult is_solvable(const FCSet& g, const FCLattice& lat, const ModularData& m);

}  // namespace fcs
