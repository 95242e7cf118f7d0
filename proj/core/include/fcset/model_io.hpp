#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcset/fusion.hpp"

namespace fcs {

/// One sparse fusion entry: N_{i j}^k = mult (mult > 0). Entries may be given
/// for i <= j only; symmetric completion is applied when building FusionData.
struct FusionQuad {
  int i = 0, j = 0, k = 0;
  int mult = 0;
  friend bool operator==(const FusionQuad&, const FusionQuad&) = default;
  friend auto operator<=>(const FusionQuad&, const FusionQuad&) = default;
};

/// In-memory form of the line-oriented model file format. See the format
/// notes in the README for the exact grammar.
struct ModelFile {
  std::string name;
  std::vector<std::string> labels;
  std::vector<Rat> weights;
  std::vector<FusionQuad> fusion;
  std::optional<SMatrixInput> smatrix;
};

/// Parse model text. Structural errors (syntax, ranges, duplicates with
/// conflicting multiplicity) throw ParseError with line/column positions.
ModelFile parse_model(const std::string& text);

/// Canonical text form: sorted i <= j fusion entries with the implied vacuum
/// diagonal omitted, rationals always as "a/b". write o parse is idempotent.
std::string write_model(const ModelFile& mf);

/// Dense fusion tensor from the sparse quads: symmetric completion plus the
/// implied vacuum diagonal N_{0q}^q = 1 for every q without explicit vacuum
/// entries.
FusionData to_fusion_data(const ModelFile& mf);

/// Sparse canonical quads from dense data (inverse of to_fusion_data for
/// valid models).
ModelFile from_fusion_data(const std::string& name, const FusionData& f,
                           std::optional<SMatrixInput> smatrix = std::nullopt);

}  // namespace fcs
