#include "doctest.h"

#include <algorithm>

#include "scl/rng.hpp"
#include "scl/word.hpp"

using namespace scl;

namespace {

// Brute-force least rotation for cross-checking Booth's algorithm.
std::string least_rotation_naive(const std::string& s) {
  std::string best = s;
  std::string cur = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (lex_less(cur, best)) best = cur;
  }
  return best;
}

std::string random_letters(Rng& rng, const Alphabet& alphabet, int len) {
  auto letters = alphabet.letters();
  std::string out;
  for (int i = 0; i < len; ++i) out.push_back(letters[rng.below_int(2 * alphabet.rank())]);
  return out;
}

}  // namespace

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet(1), Error);
  Alphabet f2(2);
  CHECK(f2.contains('a'));
  CHECK(f2.contains('B'));
  CHECK_FALSE(f2.contains('c'));
  CHECK_THROWS_AS(f2.require('c'), AlphabetError);
  CHECK_THROWS_AS(reduce("abc", f2), AlphabetError);
}

TEST_CASE("free reduction") {
  Alphabet f2(2);
  CHECK(reduce("abBA", f2).str() == "");
  CHECK(reduce("aabBA", f2).str() == "a");
  CHECK(reduce("abAB", f2).str() == "abAB");
}

TEST_CASE("reduction is idempotent and parity-preserving") {
  Alphabet f2(2);
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int len = rng.below_int(30);
    std::string raw = random_letters(rng, f2, len);
    Word w = reduce(raw, f2);
    CHECK(is_reduced(w.str()));
    CHECK(reduce(w.str(), f2) == w);
    CHECK(w.length() <= raw.size());
    CHECK((raw.size() - w.length()) % 2 == 0);
  }
}

TEST_CASE("inversion") {
  Alphabet f2(2);
  CHECK(invert(Word("abAB")).str() == "baBA");
  CHECK(invert(Word("")).str() == "");
  CHECK(invert(Word("aab")).str() == "BAA");

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::string raw = random_letters(rng, f2, rng.below_int(24));
    Word w = reduce(raw, f2);
    CHECK(invert(invert(w)) == w);
    CHECK(invert(w).length() == w.length());
    // invert commutes with reduce.
    CHECK(invert(w).str() == reduce_letters(invert_letters(raw)));
  }
}

TEST_CASE("concatenation length inequality") {
  Alphabet f2(2);
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    Word u = reduce(random_letters(rng, f2, rng.below_int(16)), f2);
    Word v = reduce(random_letters(rng, f2, rng.below_int(16)), f2);
    Word uv = concat(u, v);
    CHECK(uv.length() <= u.length() + v.length());
    CHECK((u.length() + v.length() - uv.length()) % 2 == 0);
  }
}

TEST_CASE("cyclic reduction") {
  Alphabet f2(2);
  auto r1 = cyclic_reduce(Word("Baab"));
  CHECK(r1.core.str() == least_rotation("aa"));
  CHECK(r1.conjugator.str() == "B");

  auto r2 = cyclic_reduce(Word("abAB"));
  CHECK(r2.conjugator.str() == "");
  CHECK(r2.core == CyclicWord("abAB"));

  auto r3 = cyclic_reduce(Word("aBA"));
  CHECK(r3.core.str() == "B");
  CHECK(r3.conjugator.str() == "a");
}

TEST_CASE("cyclic words canonicalize rotations") {
  CHECK(CyclicWord("abAB") == CyclicWord("bABa"));
  CHECK(CyclicWord("abAB") == CyclicWord("ABab"));
  CHECK(CyclicWord("abAB").str() == least_rotation("abAB"));
  CHECK_THROWS_AS(CyclicWord("abA"), Error);  // not cyclically reduced
}

TEST_CASE("least rotation matches brute force") {
  Alphabet f3(3);
  Rng rng(17);
  int done = 0;
  while (done < 150) {
    Word w = reduce(random_letters(rng, f3, 1 + rng.below_int(14)), f3);
    if (!is_cyclically_reduced(w.str()) || w.empty()) continue;
    CHECK(least_rotation(w.str()) == least_rotation_naive(w.str()));
    ++done;
  }
}

TEST_CASE("cyclic core is rotation invariant") {
  Alphabet f2(2);
  Rng rng(19);
  int done = 0;
  while (done < 80) {
    Word w = reduce(random_letters(rng, f2, 2 + rng.below_int(12)), f2);
    if (w.empty()) continue;
    auto core = cyclic_reduce(w).core;
    std::string s = w.str();
    std::rotate(s.begin(), s.begin() + 1, s.end());
    std::string reduced = reduce_letters(s);
    // Rotations of a word are conjugates; cores agree whenever the
    // rotation is still reduced.
    if (is_reduced(reduced)) {
      CHECK(cyclic_reduce(Word(reduced)).core == core);
    }
    ++done;
  }
}

TEST_CASE("primitive root extraction") {
  CHECK(primitive_root("abab") == std::pair<std::string, int>{"ab", 2});
  CHECK(primitive_root("aaa") == std::pair<std::string, int>{"a", 3});
  CHECK(primitive_root("abAB") == std::pair<std::string, int>{"abAB", 1});
  CHECK(primitive_root("") == std::pair<std::string, int>{"", 1});
}
