#include "doctest.h"

#include "scl/quasimorphism.hpp"
#include "scl/rng.hpp"
#include "scl/sampling.hpp"
#include "scl/scl_solver.hpp"

using namespace scl;

TEST_CASE("small counting quasimorphism basics") {
  CountingSet ab({"ab"});
  CHECK(small_count(ab, Word("abab")).c_s == 2);
  CHECK(small_count(ab, Word("abab")).h_s == 2);
  CHECK(small_count(ab, Word("BABA")).h_s == -2);

  CountingSet aa({"aa"});
  CHECK(small_count(aa, Word("aaa")).c_s == 1);  // disjointness forbids overlap

  CHECK_THROWS_AS(CountingSet({""}), InvalidSetError);
  CHECK_THROWS_AS(CountingSet({"aA"}), InvalidSetError);
}

TEST_CASE("h_S is antisymmetric") {
  Alphabet f2(2);
  CountingSet s({"ab", "aab", "B"});
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Word w = random_reduced_word({f2, seed % 17, seed});
    CHECK(small_count(s, invert(w)).h_s == -small_count(s, w).h_s);
  }
}

TEST_CASE("homogenization on cyclic words is exact") {
  CHECK(homogenized_qm(CountingSet({"ab"}), CyclicWord("ab")) == 1);
  CHECK(homogenized_qm(CountingSet({"ab"}), CyclicWord("abab")) == 2);
  CHECK(homogenized_qm(CountingSet({"ab", "AB"}), CyclicWord("abAB")) == 2);
  CHECK(homogenized_qm(CountingSet({"aa"}), CyclicWord("a")) == make_rational(1, 2));
  CHECK(packing_density(CountingSet({"ba"}), CyclicWord("ab")) == 1);
  CHECK(packing_density(CountingSet({"bb"}), CyclicWord("ab")) == 0);
}

TEST_CASE("homogenization is homogeneous: h(w^n) = n h(w)") {
  Alphabet f2(2);
  Rng rng(3);
  int done = 0;
  for (std::uint64_t seed = 0; done < 25; ++seed) {
    Word w = random_reduced_word({f2, 2 + seed % 9, seed});
    if (w.empty() || !is_cyclically_reduced(w.str())) continue;
    std::vector<std::string> words;
    for (int i = 0; i < 2; ++i) {
      Word u = random_reduced_word({f2, 1 + rng.below(4), split_seed(99, seed * 2 + i)});
      if (!u.empty()) words.push_back(u.str());
    }
    if (words.empty()) continue;
    CountingSet s(words);
    CyclicWord base(w);
    Rational h1 = homogenized_qm(s, base);
    for (int power = 2; power <= 5; ++power) {
      std::string repeated;
      for (int i = 0; i < power; ++i) repeated += base.str();
      CHECK(homogenized_qm(s, CyclicWord(repeated)) == h1 * power);
    }
    ++done;
  }
}

TEST_CASE("defect probe stays within the theoretical bound of 3") {
  CountingSet s({"ab"});
  long d = defect_probe(s, 2000, 40, 11, 2);
  CHECK(d <= 3);
  CHECK(d >= 1);  // g = a, h = b already witnesses defect 1

  // Direct evaluation: |h_S(ab) - h_S(a) - h_S(b)| = 1.
  long direct = std::labs(small_count(s, Word("ab")).h_s - small_count(s, Word("a")).h_s -
                          small_count(s, Word("b")).h_s);
  CHECK(direct == 1);
}

TEST_CASE("certificate for abAB") {
  Alphabet f2(2);
  Certificate cert = rigidity_certificate(Word("abAB"), 0.25, 2);
  CHECK(cert.block_length == 2);
  CHECK(cert.blocks.size() == 2);
  CHECK(cert.s_prime.size() == 2);
  CHECK(cert.value == 2);
  CHECK(cert.lower_bound == make_rational(1, 6));
  CHECK(verify_certificate(cert).ok);

  // Bavard: the certificate bound never exceeds the exact value.
  Rational exact = scl::scl("abAB", f2, SolveMode::kExact).value;
  CHECK(cert.lower_bound <= exact);
}

TEST_CASE("certificate errors") {
  CHECK_THROWS_AS(rigidity_certificate(Word("ab"), 0.25, 2), Error);
  CHECK_THROWS_AS(rigidity_certificate(Word("aabb"), 0.25, 2), NotABoundaryError);
}

TEST_CASE("certificate bound below exact scl on random words") {
  Alphabet f2(2);
  int done = 0;
  for (std::uint64_t seed = 0; done < 8; ++seed) {
    Word w = random_commutator_word({f2, 12 + 4 * (seed % 4), seed, true});
    CyclicWord core = cyclic_reduce(w).core;
    if (core.length() < 8) continue;
    Certificate cert = rigidity_certificate(core.word(), 0.25, 2);
    CHECK(verify_certificate(cert).ok);
    Rational exact = scl::scl(parse_chain(core.str(), f2), SolveMode::kExact).value;
    CHECK(cert.lower_bound <= exact);
    ++done;
  }
}

TEST_CASE("certificate JSON round-trip re-verifies") {
  Alphabet f2(2);
  Word w = random_commutator_word({f2, 300, 5, true});
  Certificate cert = rigidity_certificate(cyclic_reduce(w).core.word(), 0.25, 2);
  std::string json = certificate_to_json(cert);
  Certificate parsed = certificate_from_json(json);
  CHECK(parsed.word == cert.word);
  CHECK(parsed.value == cert.value);
  CHECK(parsed.lower_bound == cert.lower_bound);
  CHECK(verify_certificate(parsed).ok);

  // Tampering is caught.
  Certificate bad = parsed;
  bad.lower_bound = bad.lower_bound + 1;
  CHECK_FALSE(verify_certificate(bad).ok);
  Certificate bad2 = parsed;
  if (!bad2.s_prime.empty()) {
    bad2.s_prime.push_back(invert_letters(bad2.s_prime[0]));
    CHECK_FALSE(verify_certificate(bad2).ok);
  }
}

TEST_CASE("certificate at n = 10000 clears the mass threshold") {
  Alphabet f2(2);
  Word w = random_commutator_word({f2, 10000, 2024, true});
  CyclicWord core = cyclic_reduce(w).core;
  Certificate cert = rigidity_certificate(core.word(), 0.25, 2);
  CHECK(cert.block_length == 11);
  CHECK(cert.blocks.size() == core.length() / 11);
  CHECK(cert.lower_bound >= 60);
  CHECK(verify_certificate(cert).ok);
}
