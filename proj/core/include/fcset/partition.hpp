#pragma once

#include "fcset/fcsets.hpp"
#include "fcset/report.hpp"

namespace fcs {

/// Partition of all primaries into classes of an FC set g: p and q fall in
/// the same class iff their irreps agree on g (exact cyclotomic equality).
/// Classes are ordered by smallest member; construction verifies the class
/// count, extent sum rule, both orthogonality relations and the trivial-class
/// character values, throwing IdentityError on any failure.
struct ClassPartition {
  FCSet fcset;                               // the set g
  std::vector<int> members;                  // primaries of g, ascending
  std::vector<std::vector<int>> classes;     // partition of all primaries
  std::vector<int> class_of;                 // primary -> class index
  std::vector<Cyclotomic> extents;           // extent of each class
  std::vector<std::vector<Cyclotomic>> charvals;  // [class][member pos] = alpha(C)
  int trivial_class = -1;                    // class containing the vacuum

  int num_classes() const { return (int)classes.size(); }
  const Cyclotomic& value(int cls, int member_pos) const { return charvals[cls][member_pos]; }
};

ClassPartition classes_of(const FCSet& g, const ModularData& m);

/// Blocks of g are the classes of the dual set; additionally cross-checked
/// against the fusion characterization (same block iff some alpha in g fuses
/// p into q).
ClassPartition blocks_of(const FCSet& g, const ModularData& m);

/// Block x class overlap multiplicities, computed three independent ways
/// (S-square sums, character traces, rank of the S-minor) and cross-checked.
struct OverlapTable {
  ClassPartition classes;  // of g
  ClassPartition blocks;   // of dual(g)
  std::vector<std::vector<long>> ov;  // [block][class]
};

OverlapTable overlaps(const FCSet& g, const ModularData& m);

/// 1 / sum_{p in set} S_{0p}^2.
Cyclotomic extent_of_subset(const std::vector<int>& members, const ModularData& m);
Cyclotomic extent_of_subset(const FCSet& set, const ModularData& m);

/// Exact rank of the rho-minor with rows in `rows`, columns in `cols`
/// (equals the rank of the corresponding S-minor).
int rho_minor_rank(const std::vector<int>& rows, const std::vector<int>& cols,
                   const ModularData& m);

/// Full per-set identity suite (class counts, orthogonality, sizes, bounds,
/// product rule, overlap sum rules, Galois stability of the extent multiset).
/// Failures are report entries, not errors.
Report verify_partition_identities(const FCSet& g, const ModularData& m,
                                   const RunConfig& cfg = default_config());

/// Reciprocity sums for every nested pair g <= h of the enumerated lattice.
Report verify_reciprocity(const FCLattice& lat, const ModularData& m);

}  // namespace fcs
