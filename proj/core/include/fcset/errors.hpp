#pragma once

#include <stdexcept>
#include <string>

namespace fcs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text or structurally invalid model data.
struct ParseError : Error {
  ParseError(std::string msg, int line, int col)
      : Error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

/// An exact identity that must hold for consistent data failed; the input is
/// corrupt or internally inconsistent.
struct IdentityError : Error {
  using Error::Error;
};

/// Numeric-to-exact reconstruction failed after all escalation steps.
struct ReconstructionError : Error {
  using Error::Error;
};

/// An operation was invoked outside its domain (e.g. deconstructing a
/// non-local set), or a configured budget was exceeded.
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace fcs
