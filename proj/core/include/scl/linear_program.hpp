#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "scl/pieces.hpp"
#include "scl/rational.hpp"

namespace scl {

/// The gluing LP over a piece system:
///   minimize (1/4) * sum of triangle variables
///   subject to, per unordered gap pair {g,g'}, net directed interface
///   weight zero, and per position p, total square weight r_{word(p)}.
/// Constraint entries lie in {-2,...,2}; the optimum equals scl.
class GluingLP {
 public:
  enum class RowKind { kBalance, kCoverage };
  enum class ColKind { kSquare, kTriangle };

  struct Row {
    RowKind kind;
    int a = 0;  // balance: gap pair (a, b); coverage: position a
    int b = 0;
    Rational rhs;
  };
  struct Col {
    ColKind kind;
    int piece_index;                          // into squares() / triangles()
    std::vector<std::pair<int, int>> entries;  // (row, coefficient)
    Rational cost;
  };

  static GluingLP build(const PieceSystem& system);

  const PieceSystem& system() const { return *system_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Col>& cols() const { return cols_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return static_cast<int>(cols_.size()); }

  /// Plain-text export (documented in the README) for cross-checking
  /// against external solvers.
  void export_text(std::ostream& os) const;

 private:
  const PieceSystem* system_ = nullptr;
  std::vector<Row> rows_;
  std::vector<Col> cols_;
};

GluingLP build_gluing_lp(const PieceSystem& system);

}  // namespace scl
