#include "scl/linear_program.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "scl/errors.hpp"

namespace scl {

GluingLP GluingLP::build(const PieceSystem& system) {
  GluingLP lp;
  lp.system_ = &system;
  std::map<std::pair<int, int>, int> balance_row;

  auto directed = [&](int from, int to, std::vector<std::pair<int, int>>& entries) {
    if (from == to) return;  // self-interfaces glue among themselves
    auto key = std::minmax(from, to);
    auto [it, inserted] = balance_row.try_emplace({key.first, key.second}, -1);
    if (inserted) {
      it->second = static_cast<int>(lp.rows_.size());
      lp.rows_.push_back(Row{RowKind::kBalance, key.first, key.second, Rational(0)});
    }
    entries.emplace_back(it->second, from < to ? 1 : -1);
  };

  auto fold = [](std::vector<std::pair<int, int>>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, int>> out;
    for (const auto& e : entries) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(e);
      }
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    entries = std::move(out);
  };

  std::vector<int> coverage_row(system.num_positions());
  // Build square columns first so coverage rows exist even when a
  // position has no square (the LP is then trivially infeasible, which
  // cannot happen for normalized boundaries).
  std::vector<Col> square_cols;
  for (std::size_t s = 0; s < system.squares().size(); ++s) {
    const auto& sq = system.squares()[s];
    Col col;
    col.kind = ColKind::kSquare;
    col.piece_index = static_cast<int>(s);
    col.cost = Rational(0);
    for (const auto& [from, to] : system.square_interfaces(sq)) {
      directed(from, to, col.entries);
    }
    square_cols.push_back(std::move(col));
  }
  std::vector<Col> triangle_cols;
  for (std::size_t t = 0; t < system.triangles().size(); ++t) {
    Col col;
    col.kind = ColKind::kTriangle;
    col.piece_index = static_cast<int>(t);
    col.cost = make_rational(1, 4);
    for (const auto& [from, to] : PieceSystem::triangle_interfaces(system.triangles()[t])) {
      directed(from, to, col.entries);
    }
    fold(col.entries);
    triangle_cols.push_back(std::move(col));
  }
  for (int p = 0; p < system.num_positions(); ++p) {
    coverage_row[p] = static_cast<int>(lp.rows_.size());
    lp.rows_.push_back(Row{RowKind::kCoverage, p, 0, system.coefficient(p)});
  }
  for (std::size_t s = 0; s < system.squares().size(); ++s) {
    const auto& sq = system.squares()[s];
    square_cols[s].entries.emplace_back(coverage_row[sq.p], 1);
    square_cols[s].entries.emplace_back(coverage_row[sq.q], 1);
    fold(square_cols[s].entries);
  }
  lp.cols_ = std::move(square_cols);
  for (auto& col : triangle_cols) lp.cols_.push_back(std::move(col));
  return lp;
}

GluingLP build_gluing_lp(const PieceSystem& system) { return GluingLP::build(system); }

void GluingLP::export_text(std::ostream& os) const {
  os << "# scl gluing LP, format v1\n";
  os << "# objective: minimize sum of cost*col over cols; rationals as p/q\n";
  os << "chain " << system_->chain().str() << "\n";
  os << "rows " << rows_.size() << "\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (r.kind == RowKind::kBalance) {
      os << "row " << i << " balance gap " << r.a << " gap " << r.b << " rhs "
         << to_string(r.rhs) << "\n";
    } else {
      os << "row " << i << " cover position " << r.a << " rhs " << to_string(r.rhs) << "\n";
    }
  }
  os << "cols " << cols_.size() << "\n";
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    const auto& c = cols_[j];
    os << "col " << j << " ";
    if (c.kind == ColKind::kSquare) {
      const auto& sq = system_->squares()[c.piece_index];
      os << "square " << sq.p << " " << sq.q;
    } else {
      const auto& tr = system_->triangles()[c.piece_index];
      os << "triangle " << tr.gaps[0] << " " << tr.gaps[1] << " " << tr.gaps[2];
    }
    os << " cost " << to_string(c.cost) << " entries";
    for (const auto& [row, coef] : c.entries) os << " " << row << ":" << coef;
    os << "\n";
  }
}

}  // namespace scl
