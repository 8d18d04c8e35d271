#include "doctest.h"

#include <chrono>

#include "scl/oracle.hpp"
#include "scl/rng.hpp"
#include "scl/sampling.hpp"
#include "scl/scl_solver.hpp"

using namespace scl;

TEST_CASE("oracle reproduces the hand instances") {
  Alphabet f2(2);

  auto w2 = scl_oracle_small(chain_of("abAB", f2), 2);
  REQUIRE(w2.has_value());
  CHECK(w2->value == make_rational(1, 2));
  CHECK(w2->multiplicity == 1);
  CHECK(w2->triangle_count() == 2);

  // Budget 1: two triangles are the minimum, so no witness exists.
  CHECK_FALSE(scl_oracle_small(chain_of("abAB", f2), 1).has_value());

  auto zero = scl_oracle_small(chain_of("abAB - abAB", f2), 2);
  REQUIRE(zero.has_value());
  CHECK(zero->value == 0);

  CHECK_THROWS_AS(scl_oracle_small(chain_of("abAB + aabAAB + aabbAABB", f2), 2), RangeError);
  CHECK_THROWS_AS(scl_oracle_small(chain_of("abAB", f2), 9), RangeError);
}

TEST_CASE("oracle value matches the LP optimum on random small words") {
  // Criterion-2 shape: random homologically trivial words, k = 2 and 3,
  // length <= 8, budget 6; oracle witnesses equal the LP value and the
  // LP never exceeds the oracle.
  int checked = 0;
  for (int rank : {2, 3}) {
    Alphabet alphabet(rank);
    for (std::uint64_t seed = 0; checked < (rank == 2 ? 10 : 20); ++seed) {
      std::size_t n = 4 + 2 * (seed % 3);
      Word w = random_commutator_word({alphabet, n, seed + 1000 * rank, true});
      Chain c = normalize_chain(parse_chain(cyclic_reduce(w).core.str(), alphabet));
      if (c.is_zero() || c.total_letters() > 8) continue;
      Rational lp = scl::scl(c, SolveMode::kExact).value;
      auto witness = scl_oracle_small(c, 6);
      if (witness) {
        CHECK(lp <= witness->value);
        CHECK(witness->value == lp);
      }
      ++checked;
    }
  }
  CHECK(checked == 20);
}

TEST_CASE("oracle on a fractional chain") {
  Alphabet f2(2);
  // Coverage must be integral, so multiplicity 1 is skipped and the
  // witness doubles everything.
  auto w = scl_oracle_small(chain_of("1/2*abAB", f2), 4);
  REQUIRE(w.has_value());
  CHECK(w->value == make_rational(1, 4));
  CHECK(w->multiplicity == 2);
}
