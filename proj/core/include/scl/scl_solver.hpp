#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scl/chain.hpp"
#include "scl/linear_program.hpp"
#include "scl/pieces.hpp"
#include "scl/simplex.hpp"

namespace scl {

enum class SolveMode { kAuto, kExact, kInexact };

/// Result of one scl computation.
struct SclResult {
  SolveMode mode = SolveMode::kExact;  // mode actually used
  Rational value;                      // exact mode
  double value_inexact = 0.0;          // inexact mode
  bool exact = true;

  /// Primal weights per piece, in the column order of the LP
  /// (squares, then triangles). Empty for the zero chain.
  std::vector<Rational> primal;
  std::vector<double> primal_inexact;
  std::vector<Rational> dual;
  std::vector<double> dual_inexact;

  bool strong_duality_verified = false;  // exact mode: primal obj == dual obj
  double feasibility_residual = 0.0;     // inexact mode
  long iterations = 0;

  double value_as_double() const { return exact ? to_double(value) : value_inexact; }
};

/// Policy threshold: chains with at most this many letters solve
/// exactly under kAuto.
inline constexpr std::size_t kExactAutoLimit = 32;

/// Solve the gluing LP of an already-built piece system.
SclResult solve_gluing_lp(const GluingLP& lp, SolveMode mode);

/// scl of a chain: normalize, enumerate pieces, solve.
/// Throws NotABoundaryError when the chain is not a 1-boundary.
SclResult scl(const Chain& chain, SolveMode mode = SolveMode::kAuto);
SclResult scl(const std::string& chain_text, const Alphabet& alphabet,
              SolveMode mode = SolveMode::kAuto);

}  // namespace scl
