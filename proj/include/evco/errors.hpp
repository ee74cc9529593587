#pragma once

#include <stdexcept>
#include <string>

namespace evco {

/// Operands live in spaces of different dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// The exact algorithms do not cover this instance (too many dimensions,
/// DNF blowup beyond the configured bound, ...).
class UnsupportedInstance : public std::runtime_error {
 public:
  explicit UnsupportedInstance(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on the mathematical input does not hold (point inside the
/// epigraph, set not e-convex, dual outside K*\{0}, ...).
class PreconditionViolated : public std::invalid_argument {
 public:
  explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed textual input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evco
