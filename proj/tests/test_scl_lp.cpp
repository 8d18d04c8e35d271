#include "doctest.h"

#include <set>
#include <sstream>

#include "scl/rng.hpp"
#include "scl/sampling.hpp"
#include "scl/scl_solver.hpp"

using namespace scl;

TEST_CASE("piece enumeration for abAB") {
  Alphabet f2(2);
  PieceSystem sys = enumerate_pieces(chain_of("abAB", f2));
  CHECK(sys.num_positions() == 4);
  CHECK(sys.num_gaps() == 4);

  // Exactly the a/A and b/B pairs.
  REQUIRE(sys.squares().size() == 2);
  std::set<std::pair<char, char>> pairs;
  for (const auto& s : sys.squares()) {
    pairs.insert({sys.letter(s.p), sys.letter(s.q)});
    CHECK(is_inverse_pair(sys.letter(s.p), sys.letter(s.q)));
  }
  CHECK(pairs.size() == 2);

  // Burnside: (4^3 + 2*4)/3 = 24 rotation classes of gap triples.
  CHECK(sys.triangles().size() == 24);

  // Canonical rotations are unique.
  std::set<std::array<GapId, 3>> canon;
  for (const auto& t : sys.triangles()) {
    canon.insert(PieceSystem::canonical_triangle(t.gaps[0], t.gaps[1], t.gaps[2]).gaps);
  }
  CHECK(canon.size() == 24);
}

TEST_CASE("piece enumeration error paths") {
  Alphabet f2(2);
  CHECK_THROWS_AS(enumerate_pieces(chain_of("ab", f2)), NotABoundaryError);
  PieceSystem zero = enumerate_pieces(chain_of("abAB - abAB", f2));
  CHECK(zero.num_positions() == 0);
  CHECK(zero.squares().empty());
  CHECK(zero.triangles().empty());
}

TEST_CASE("exact scl of the hand-certified instances") {
  Alphabet f2(2);

  auto r = scl::scl("abAB", f2, SolveMode::kExact);
  CHECK(r.exact);
  CHECK(r.value == make_rational(1, 2));
  CHECK(r.strong_duality_verified);

  CHECK(scl::scl("baBA", f2, SolveMode::kExact).value == make_rational(1, 2));
  CHECK(scl::scl("abABabAB", f2, SolveMode::kExact).value == 1);
  CHECK(scl::scl("abAB + baBA", f2, SolveMode::kExact).value == 0);
  CHECK(scl::scl("1/2*abAB", f2, SolveMode::kExact).value == make_rational(1, 4));

  // A second commutator: scl::scl([a^2, b]) = 1/2.
  CHECK(scl::scl("aabAAB", f2, SolveMode::kExact).value == make_rational(1, 2));
}

TEST_CASE("inexact mode agrees with exact on small instances") {
  Alphabet f2(2);
  for (const char* text : {"abAB", "aabAAB", "aabbAABB"}) {
    auto ex = scl::scl(text, f2, SolveMode::kExact);
    auto in = scl::scl(text, f2, SolveMode::kInexact);
    CHECK_FALSE(in.exact);
    CHECK(in.feasibility_residual < 1e-9);
    CHECK(in.value_inexact == doctest::Approx(to_double(ex.value)).epsilon(1e-9));
  }
}

TEST_CASE("norm axioms hold exactly on random chains") {
  Alphabet f2(2);
  std::vector<Chain> chains;
  for (std::uint64_t seed = 0; chains.size() < 10; ++seed) {
    Word w = random_commutator_word({f2, 4 + 2 * (seed % 3), seed, true});
    Chain c = normalize_chain(parse_chain(cyclic_reduce(w).core.str(), f2));
    if (!c.is_zero()) chains.push_back(c);
  }
  for (const auto& c : chains) {
    Rational base = scl::scl(c, SolveMode::kExact).value;

    // Symmetry scl::scl(c) = scl::scl(-c).
    CHECK(scl::scl(invert_chain(c), SolveMode::kExact).value == base);

    // Homogeneity over q in {1/2, 2, 3}.
    CHECK(scl::scl(scale_chain(make_rational(1, 2), c), SolveMode::kExact).value ==
          base / 2);
    CHECK(scl::scl(scale_chain(Rational(2), c), SolveMode::kExact).value == base * 2);
    CHECK(scl::scl(scale_chain(Rational(3), c), SolveMode::kExact).value == base * 3);
  }

  // Triangle inequality on chain pairs.
  for (std::size_t i = 0; i + 1 < chains.size(); i += 2) {
    Rational a = scl::scl(chains[i], SolveMode::kExact).value;
    Rational b = scl::scl(chains[i + 1], SolveMode::kExact).value;
    Rational ab = scl::scl(add_chains(chains[i], chains[i + 1]), SolveMode::kExact).value;
    CHECK(ab <= a + b);
  }
}

TEST_CASE("scl of w^2 doubles scl of w") {
  Alphabet f2(2);
  int done = 0;
  for (std::uint64_t seed = 0; done < 5; ++seed) {
    Word w = random_commutator_word({f2, 6, seed, true});
    CyclicWord core = cyclic_reduce(w).core;
    if (core.length() != 6) continue;
    Rational base = scl::scl(parse_chain(core.str(), f2), SolveMode::kExact).value;
    std::string doubled = core.str() + core.str();
    Rational twice = scl::scl(parse_chain(doubled, f2), SolveMode::kExact).value;
    CHECK(twice == base * 2);
    ++done;
  }
}

TEST_CASE("scl is positive on nonzero chains") {
  Alphabet f2(2);
  int done = 0;
  for (std::uint64_t seed = 100; done < 50; ++seed) {
    std::size_t n = 4 + 2 * (seed % 4);  // 4..10
    Word w = random_commutator_word({f2, n, seed, true});
    Chain c = normalize_chain(parse_chain(cyclic_reduce(w).core.str(), f2));
    if (c.is_zero()) continue;
    CHECK(scl::scl(c, SolveMode::kExact).value > 0);
    ++done;
  }
}

TEST_CASE("strong duality holds on every exact solve") {
  Alphabet f2(2);
  for (const char* text : {"abAB", "aabAAB", "abAB + aabAAB", "3*abAB", "aabbAABB"}) {
    auto r = scl::scl(text, f2, SolveMode::kExact);
    CHECK(r.strong_duality_verified);
  }
}

TEST_CASE("multi-word chains and the Fig-2 style chain") {
  Alphabet f2(2);
  Chain c = chain_of("a + b + AB + abAB", f2);
  CHECK(c.homologically_trivial());
  auto r = scl::scl(c, SolveMode::kExact);
  CHECK(r.value > 0);
  CHECK(r.strong_duality_verified);
}

TEST_CASE("LP text export shows the documented structure") {
  Alphabet f2(2);
  PieceSystem sys = enumerate_pieces(chain_of("abAB", f2));
  GluingLP lp = build_gluing_lp(sys);
  std::ostringstream os;
  lp.export_text(os);
  std::string text = os.str();
  CHECK(text.find("rows") != std::string::npos);
  CHECK(text.find("cols 26") != std::string::npos);  // 2 squares + 24 triangles
  CHECK(text.find("square 0 2") != std::string::npos);
  CHECK(text.find("cost 1/4") != std::string::npos);
}
