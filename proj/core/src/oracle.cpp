#include "scl/oracle.hpp"

#include <algorithm>

#include "scl/errors.hpp"

namespace scl {

namespace {

struct Search {
  const PieceSystem& sys;
  int gaps;
  int budget;
  std::vector<std::vector<int>> squares_at;  // position -> square indices

  std::optional<OracleWitness> best;

  // State for one square assignment.
  std::vector<int> square_mult;
  std::vector<int> coverage_left;
  int multiplicity = 1;

  // Triangle search state.
  std::vector<int> net;      // signed arc imbalance, indexed a*gaps+b for a<b
  std::vector<int> parity;   // self-arc parity per gap
  long total_imbalance = 0;  // sum of |net|
  int odd_parities = 0;
  std::vector<TrianglePiece> chosen;

  explicit Search(const PieceSystem& s, int b) : sys(s), gaps(s.num_gaps()), budget(b) {
    squares_at.resize(sys.num_positions());
    for (std::size_t i = 0; i < sys.squares().size(); ++i) {
      squares_at[sys.squares()[i].p].push_back(static_cast<int>(i));
      squares_at[sys.squares()[i].q].push_back(static_cast<int>(i));
    }
    net.assign(static_cast<std::size_t>(gaps) * gaps, 0);
    parity.assign(gaps, 0);
  }

  long triangle_cap() const {
    long cap = budget;
    if (best) {
      // Only strictly better values are interesting: T/(4N) < best.
      Rational limit = best->value * 4 * multiplicity;
      long strict = (limit.get_num().get_si() - 1) / limit.get_den().get_si();
      cap = std::min(cap, strict);
    }
    return cap;
  }

  void add_arc(int from, int to, int delta) {
    if (from == to) {
      parity[from] ^= 1;
      odd_parities += parity[from] ? 1 : -1;
      return;
    }
    int a = std::min(from, to), b = std::max(from, to);
    int& slot = net[static_cast<std::size_t>(a) * gaps + b];
    int value = (from < to ? 1 : -1) * delta;
    total_imbalance -= std::abs(slot);
    slot += value;
    total_imbalance += std::abs(slot);
  }

  void apply_square(int s, int delta) {
    for (const auto& [from, to] : sys.square_interfaces(sys.squares()[s])) {
      add_arc(from, to, delta);
    }
  }

  void apply_triangle(const TrianglePiece& t, int delta) {
    for (const auto& [from, to] : PieceSystem::triangle_interfaces(t)) {
      add_arc(from, to, delta);
    }
  }

  void record_if_better() {
    Rational value(static_cast<long>(chosen.size()), 4L * multiplicity);
    value.canonicalize();
    if (best && best->value <= value) return;
    OracleWitness w;
    w.value = value;
    w.multiplicity = multiplicity;
    w.square_multiplicity = square_mult;
    w.triangles = chosen;
    best = w;
  }

  // Triangle completion: every remaining imbalance needs a reversing
  // arc, every odd self-arc parity another self arc.
  void search_triangles() {
    if (total_imbalance == 0 && odd_parities == 0) {
      record_if_better();
      return;
    }
    long used = static_cast<long>(chosen.size());
    long lower = std::max<long>((total_imbalance + 2) / 3, odd_parities);
    if (used + lower > triangle_cap()) return;

    int from = -1, to = -1;
    for (int a = 0; a < gaps && from < 0; ++a) {
      for (int b = a + 1; b < gaps && from < 0; ++b) {
        int v = net[static_cast<std::size_t>(a) * gaps + b];
        if (v > 0) {
          from = b;  // excess a->b arcs: need an arc b -> a
          to = a;
        } else if (v < 0) {
          from = a;
          to = b;
        }
      }
    }
    if (from >= 0) {
      for (int f = 0; f < gaps; ++f) {
        TrianglePiece t = PieceSystem::canonical_triangle(from, to, f);
        chosen.push_back(t);
        apply_triangle(t, 1);
        search_triangles();
        apply_triangle(t, -1);
        chosen.pop_back();
      }
      return;
    }
    // Balanced arcs but odd self-arc parity somewhere.
    int g = 0;
    while (parity[g] == 0) ++g;
    for (int f = 0; f < gaps; ++f) {
      TrianglePiece t = PieceSystem::canonical_triangle(g, g, f);
      chosen.push_back(t);
      apply_triangle(t, 1);
      search_triangles();
      apply_triangle(t, -1);
      chosen.pop_back();
    }
  }

  // Square assignments meeting the coverage exactly, enumerated once
  // each: squares covering the first deficient position are taken in
  // non-decreasing index order.
  void search_squares(int min_index) {
    int pos = 0;
    while (pos < sys.num_positions() && coverage_left[pos] == 0) ++pos;
    if (pos == sys.num_positions()) {
      search_triangles();
      return;
    }
    for (int s : squares_at[pos]) {
      if (s < min_index) continue;
      const auto& sq = sys.squares()[s];
      int other = sq.p == pos ? sq.q : sq.p;
      if (coverage_left[other] == 0) continue;
      --coverage_left[sq.p];
      --coverage_left[sq.q];
      ++square_mult[s];
      apply_square(s, 1);
      // Same first-deficient position: keep the order constraint.
      search_squares(coverage_left[pos] > 0 ? s : 0);
      apply_square(s, -1);
      --square_mult[s];
      ++coverage_left[sq.p];
      ++coverage_left[sq.q];
    }
  }

  void run() {
    for (multiplicity = 1; multiplicity <= budget; ++multiplicity) {
      if (best && best->value == 0) return;
      bool integral = true;
      coverage_left.assign(sys.num_positions(), 0);
      for (int p = 0; p < sys.num_positions(); ++p) {
        Rational cov = sys.coefficient(p) * multiplicity;
        if (cov.get_den() != 1) {
          integral = false;
          break;
        }
        coverage_left[p] = static_cast<int>(cov.get_num().get_si());
      }
      if (!integral) continue;
      square_mult.assign(sys.squares().size(), 0);
      search_squares(0);
    }
  }
};

}  // namespace

std::optional<OracleWitness> scl_oracle_small(const Chain& chain, int piece_budget) {
  Chain c = chain.normalized() ? chain : normalize_chain(chain);
  if (c.total_letters() > 12) {
    throw RangeError("oracle is limited to chains of total length 12");
  }
  if (piece_budget < 1 || piece_budget > 8) {
    throw RangeError("oracle budget must lie in 1..8");
  }
  if (c.is_zero()) {
    OracleWitness w;
    w.value = 0;
    return w;
  }
  PieceSystem sys = enumerate_pieces(c);
  Search search(sys, piece_budget);
  search.run();
  return search.best;
}

}  // namespace scl
