#pragma once

#include <stdexcept>
#include <string>

namespace catransport {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two values belong to different group models / crossed modules.
struct ModelMismatchError : Error {
  using Error::Error;
};

/// Operation not defined for this model kind (e.g. exp on a finite group).
struct UnsupportedOperationError : Error {
  using Error::Error;
};

/// Endpoints do not match when composing paths or morphisms.
struct CompositionError : Error {
  CompositionError(const std::string& what, double distance)
      : Error(what), distance(distance) {}
  double distance = 0.0;
};

/// Incompatible grids (step mismatch, degenerate sizes).
struct GridError : Error {
  using Error::Error;
};

/// Bundle point does not sit over the required base point.
struct FiberError : Error {
  using Error::Error;
};

/// A claimed backtrack window fails the mirror condition.
struct BacktrackError : Error {
  using Error::Error;
};

/// Structural violation in a finite categorical fixture (centrality,
/// freeness, transitivity); the message carries a witness.
struct StructureError : Error {
  using Error::Error;
};

/// Bad experiment configuration (unknown scenario, check, malformed grid).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace catransport
