#pragma once

#include <optional>
#include <vector>

#include "scl/pieces.hpp"

namespace scl {

/// Certificate found by the exhaustive search: an honest integral
/// gluing with `triangles.size()` triangle pieces covering the chain
/// with multiplicity N; its value is triangles/(4N).
struct OracleWitness {
  Rational value;
  int multiplicity = 1;
  std::vector<int> square_multiplicity;       // per square piece
  std::vector<TrianglePiece> triangles;       // with repetition

  int triangle_count() const { return static_cast<int>(triangles.size()); }
};

/// Exhaustive search over integer multiplicities of squares and
/// triangles with coverage N <= budget and at most `budget` triangles,
/// keeping the best -chi/2N found. Test oracle only; independent of
/// the LP solver. Requires total chain length <= 12 and budget <= 8.
std::optional<OracleWitness> scl_oracle_small(const Chain& chain, int piece_budget);

}  // namespace scl
