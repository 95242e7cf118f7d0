#pragma once

#include "fcset/drinfeld.hpp"
#include "fcset/model_io.hpp"

namespace fcs {

/// Bundled models: trivial, fibonacci, ising, toric (= D(Z2)), so16_lvl1,
/// the Z_n abelian anyon families for n <= 5, and d_s3 from the double
/// generator.
std::vector<ModelFile> builtin_catalog();

/// Catalog entry by name; throws PreconditionError when absent.
ModelFile catalog_model(const std::string& name);

}  // namespace fcs
