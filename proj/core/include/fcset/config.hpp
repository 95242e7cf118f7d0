#pragma once

#include <cstdint>

#include "fcset/errors.hpp"

namespace fcs {

enum class OutputFormat { Text, Records };

/// Knobs shared by all numeric/enumerative operations. Every computation is
/// deterministic for a fixed RunConfig.
struct RunConfig {
  long precision_bits = 192;        // working precision for embeddings
  long precision_cap_factor = 4;    // escalation: x2 per step up to this factor
  long conductor_multiplier = 2;    // conductor escalation step for reconstruction
  long denom_bound = 1000000;       // max coordinate denominator in reconstruction
  long enumeration_budget = 100000; // cap on number of enumerated FC sets
  std::uint64_t seed = 0x5eedf0c5;  // seeds deterministic generic combinations
  OutputFormat format = OutputFormat::Text;

  void check() const {
    if (precision_bits < 64) throw PreconditionError("precision_bits must be >= 64");
    if (precision_cap_factor < 1 || conductor_multiplier < 1 || denom_bound < 1 ||
        enumeration_budget < 1)
      throw PreconditionError("RunConfig fields must be positive");
  }
};

inline const RunConfig& default_config() {
  static const RunConfig cfg{};
  return cfg;
}

}  // namespace fcs
