#pragma once

#include <stdexcept>
#include <string>

namespace scl {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A letter outside the 2k-letter alphabet of the current rank.
struct AlphabetError : Error {
  using Error::Error;
};

/// Chain text that does not match the chain grammar. Carries the byte
/// offset of the first offending character.
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Odd-length word requested from the commutator subgroup.
struct ParityError : Error {
  using Error::Error;
};

/// Rejection sampling exceeded its retry cap.
struct ExhaustionError : Error {
  using Error::Error;
};

/// Index or length parameter outside its documented range.
struct RangeError : Error {
  using Error::Error;
};

/// A chain with nonzero abelianization where a 1-boundary is required.
struct NotABoundaryError : Error {
  using Error::Error;
};

/// Instance exceeds a configured size cap.
struct CapacityError : Error {
  using Error::Error;
};

/// Input too short for the requested construction.
struct DegenerateError : Error {
  using Error::Error;
};

/// A counting set containing the empty word.
struct InvalidSetError : Error {
  using Error::Error;
};

/// Tripod assembly could not complete within its budget.
struct AssemblyFailure : Error {
  using Error::Error;
};

/// A condition that cannot occur for well-formed inputs (solver
/// infeasibility on a homologically trivial chain, and the like).
struct InternalError : Error {
  using Error::Error;
};

}  // namespace scl
