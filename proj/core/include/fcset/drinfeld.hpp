#pragma once

#include "fcset/model_io.hpp"

namespace fcs {

/// Multiplication table of a finite group: table[a][b] = a*b with identity 0.
using GroupTable = std::vector<std::vector<int>>;

GroupTable cyclic_group_table(int n);
GroupTable symmetric_group_table(int n);  // n! elements, n <= 5

/// Exact character table of a finite group, certified by the orthogonality
/// relations. Values live in Q[zeta_e] for the group exponent e; numeric
/// candidates come from a seeded class-matrix eigensolve.
struct CharacterTable {
  std::vector<std::vector<int>> classes;  // conjugacy classes, sorted by min element
  std::vector<int> class_of;              // element -> class
  std::vector<std::vector<Cyclotomic>> chars;  // [irrep][class]; chars[0] trivial
  long exponent = 1;

  const Cyclotomic& value(int irrep, int element) const {
    return chars[irrep][class_of[element]];
  }
  long degree(int irrep) const;
};

CharacterTable character_table(const GroupTable& g, const RunConfig& cfg = default_config());

/// Modular data of the Drinfeld double D(G): primaries are pairs (conjugacy
/// class, irreducible character of the centralizer), S from the standard
/// double formula and weights from the twists. The fusion rules come from the
/// exact Verlinde sum and must be non-negative integers. The emitted file
/// carries the S-matrix section.
ModelFile drinfeld_double_data(const GroupTable& g, const std::string& name,
                               const RunConfig& cfg = default_config());

}  // namespace fcs
