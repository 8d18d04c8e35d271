#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "scl/chain.hpp"

namespace scl {

/// Letter slot (word index, letter index) of a normalized chain,
/// flattened to a single id. The gap with the same id is the slot
/// between position id and next(id) within the same cyclic word.
using PositionId = int;
using GapId = int;

/// Unit slice of a fatgraph edge: an unordered pair of positions
/// carrying inverse letters. Its two directed interfaces are
/// (gap(p), gap(prev q)) and (gap(q), gap(prev p)).
struct SquarePiece {
  PositionId p;
  PositionId q;  // p < q
};

/// Disc realizing a trivalent vertex: a cyclic triple of gaps, stored
/// in canonical rotation. Directed interfaces (g1,g2), (g2,g3), (g3,g1).
struct TrianglePiece {
  std::array<GapId, 3> gaps;
};

/// Flattened index of a normalized chain plus every square and
/// triangle piece over it.
class PieceSystem {
 public:
  /// Requires a normalized, homologically trivial chain; throws
  /// NotABoundaryError otherwise. The zero chain yields an empty system.
  static PieceSystem enumerate(const Chain& chain);

  const Chain& chain() const { return chain_; }
  int num_positions() const { return static_cast<int>(letters_.size()); }
  int num_gaps() const { return num_positions(); }

  char letter(PositionId p) const { return letters_[p]; }
  int word_of(PositionId p) const { return word_of_[p]; }
  PositionId next(PositionId p) const { return next_[p]; }
  PositionId prev(PositionId p) const { return prev_[p]; }
  const Rational& coefficient(PositionId p) const;

  const std::vector<SquarePiece>& squares() const { return squares_; }
  const std::vector<TrianglePiece>& triangles() const { return triangles_; }

  /// The two directed interfaces of a square, as (from-gap, to-gap).
  std::array<std::pair<GapId, GapId>, 2> square_interfaces(const SquarePiece& s) const;
  static std::array<std::pair<GapId, GapId>, 3> triangle_interfaces(const TrianglePiece& t);

  static TrianglePiece canonical_triangle(GapId a, GapId b, GapId c);

 private:
  Chain chain_;
  std::string letters_;
  std::vector<int> word_of_;
  std::vector<PositionId> next_;
  std::vector<PositionId> prev_;
  std::vector<SquarePiece> squares_;
  std::vector<TrianglePiece> triangles_;
};

PieceSystem enumerate_pieces(const Chain& chain);

}  // namespace scl
