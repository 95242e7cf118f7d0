#pragma once

#include "fcset/center.hpp"

namespace fcs {

/// Locality test: g contained in its dual, cross-checked against the weight
/// criterion (omega multiplicative on fusion triples inside g). The two
/// characterizations must agree.
bool is_local(const FCSet& g, const ModularData& m);

/// A twister is an FC set all of whose conformal weights are integers.
bool is_twister(const FCSet& g, const ModularData& m);

/// For local g: the sub-twister {alpha in g : omega_alpha = 1}. When g is not
/// itself a twister this is an index-two central quotient of g.
FCSet twister_core(const FCSet& g, const ModularData& m);

/// The unique class R with alpha(R) = omega_alpha d_alpha; verified central
/// with R^2 trivial and integer weight differences inside its blocks.
int ramond_class(const FCSet& g, const ModularData& m);

/// Per-class sector entry of a deconstruction report.
struct Sector {
  std::vector<int> class_members;
  Cyclotomic extent;
  std::vector<std::vector<int>> blocks_inside;
  std::vector<long> block_overlaps;  // <b, C> for the blocks inside
};

struct DeconstructionReport {
  FCSet g;
  bool local = false;
  bool twister = false;
  int ramond = -1;                 // class index
  FCSet core;                      // twister core
  std::vector<Sector> sectors;     // one per class of g
  Cyclotomic twist_group_order;    // [[g-perp]]
  bool order_is_integer = false;
  long boson_block_count = 0;      // blocks inside the trivial class
  long fermion_block_count = 0;    // blocks inside the Ramond class
  Report checks;
};

/// Full deconstruction of a local FC set (hard precondition). Verifies the
/// weight quantization per central class, the block-count identity both ways
/// and the Ramond overlap lower bound.
DeconstructionReport deconstruct(const FCSet& g, const ModularData& m);

/// Character-ring statements for g in L_int: integral class extents dividing
/// the dual extent, vanishing characters for dimensions above 1, the center
/// divisibility law and the coprimality dichotomy; plus the theorem that
/// local sets have integer dimensions. Failures are findings, not errors.
Report char_ring_checks(const FCSet& g, const ModularData& m);

}  // namespace fcs
