#include "scl/pieces.hpp"

#include "scl/errors.hpp"

namespace scl {

const Rational& PieceSystem::coefficient(PositionId p) const {
  return chain_.terms()[word_of_[p]].coefficient;
}

TrianglePiece PieceSystem::canonical_triangle(GapId a, GapId b, GapId c) {
  std::array<GapId, 3> r0{a, b, c}, r1{b, c, a}, r2{c, a, b};
  std::array<GapId, 3> best = r0;
  if (r1 < best) best = r1;
  if (r2 < best) best = r2;
  return TrianglePiece{best};
}

std::array<std::pair<GapId, GapId>, 2> PieceSystem::square_interfaces(
    const SquarePiece& s) const {
  // Gap ids coincide with position ids: gap(p) sits after position p.
  return {std::make_pair(s.p, prev_[s.q]), std::make_pair(s.q, prev_[s.p])};
}

std::array<std::pair<GapId, GapId>, 3> PieceSystem::triangle_interfaces(
    const TrianglePiece& t) {
  return {std::make_pair(t.gaps[0], t.gaps[1]), std::make_pair(t.gaps[1], t.gaps[2]),
          std::make_pair(t.gaps[2], t.gaps[0])};
}

PieceSystem PieceSystem::enumerate(const Chain& chain) {
  if (!chain.normalized()) {
    return enumerate(normalize_chain(chain));
  }
  if (!chain.is_zero() && !chain.homologically_trivial()) {
    throw NotABoundaryError("chain has nonzero abelianization: " + chain.str());
  }
  PieceSystem sys;
  sys.chain_ = chain;
  for (std::size_t j = 0; j < chain.terms().size(); ++j) {
    const std::string& w = chain.terms()[j].word.str();
    int offset = static_cast<int>(sys.letters_.size());
    int len = static_cast<int>(w.size());
    for (int i = 0; i < len; ++i) {
      sys.letters_.push_back(w[i]);
      sys.word_of_.push_back(static_cast<int>(j));
      sys.next_.push_back(offset + (i + 1) % len);
      sys.prev_.push_back(offset + (i + len - 1) % len);
    }
  }
  const int n = sys.num_positions();
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (is_inverse_pair(sys.letters_[p], sys.letters_[q])) {
        sys.squares_.push_back(SquarePiece{p, q});
      }
    }
  }
  // All cyclic triples of gaps, one representative per rotation class.
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int c = a; c < n; ++c) {
        std::array<GapId, 3> t{a, b, c}, r1{b, c, a}, r2{c, a, b};
        if (t <= r1 && t <= r2) sys.triangles_.push_back(TrianglePiece{t});
      }
    }
  }
  return sys;
}

PieceSystem enumerate_pieces(const Chain& chain) { return PieceSystem::enumerate(chain); }

}  // namespace scl
