#include "doctest.h"

#include <algorithm>
#include <future>
#include <set>

#include "scl/sampling.hpp"
#include "scl/scl_solver.hpp"
#include "scl/tripods.hpp"

using namespace scl;

namespace {

// Brute-force tripod enumeration straight from the definition: three
// cyclic segments of the forms xY, yZ, zX, found by letter comparison.
std::vector<TripodCopy> tripods_by_bruteforce(const CyclicWord& v, int L) {
  const int n = static_cast<int>(v.length());
  auto seg = [&](int i, int len) { return v.subword(i, len); };
  std::vector<TripodCopy> out;
  for (int i1 = 0; i1 < n; ++i1) {
    std::string s1 = seg(i1, 2 * L);
    for (int i2 = 0; i2 < n; ++i2) {
      std::string s2 = seg(i2, 2 * L);
      if (invert_letters(s1.substr(L)) != s2.substr(0, L)) continue;
      for (int i3 = 0; i3 < n; ++i3) {
        std::string s3 = seg(i3, 2 * L);
        if (invert_letters(s2.substr(L)) != s3.substr(0, L)) continue;
        if (invert_letters(s3.substr(L)) != s1.substr(0, L)) continue;
        std::array<int, 3> t{i1, i2, i3}, r1{i2, i3, i1}, r2{i3, i1, i2};
        if (t <= r1 && t <= r2) out.push_back({i1, i2, i3});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("abstract tripod counts") {
  CHECK(tripod_abstract_count(1, 2) == 8);
  // (2k)(2k-1)(2k-2)(2k-1)^{3(L-1)}/3 for k=3, L=2.
  Integer expect = Integer(6) * 5 * 4 / 3;
  for (int i = 0; i < 3; ++i) expect *= 5;
  CHECK(tripod_abstract_count(2, 3) == expect);
}

TEST_CASE("tripod enumeration matches the brute-force scan") {
  Alphabet f2(2);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Word w = random_commutator_word({f2, 10 + 2 * (seed % 3), seed, true});
    CyclicWord v = cyclic_reduce(w).core;
    if (v.length() < 4) continue;
    for (int L = 1; 2 * L <= static_cast<int>(v.length()) && L <= 2; ++L) {
      auto fast = enumerate_tripods(v, L, 2);
      auto slow = tripods_by_bruteforce(v, L);
      REQUIRE(fast.copies.size() == slow.size());
      for (std::size_t i = 0; i < slow.size(); ++i) {
        CHECK(fast.copies[i].i1 == slow[i].i1);
        CHECK(fast.copies[i].i2 == slow[i].i2);
        CHECK(fast.copies[i].i3 == slow[i].i3);
      }
    }
  }
  CHECK_THROWS_AS(enumerate_tripods(CyclicWord("abAB"), 3, 2), RangeError);
}

TEST_CASE("tripod labels have pairwise distinct last letters") {
  Alphabet f2(2);
  Word w = random_commutator_word({f2, 20, 5, true});
  CyclicWord v = cyclic_reduce(w).core;
  auto en = enumerate_tripods(v, 2, 2);
  for (const auto& c : en.copies) {
    std::string x = v.subword(c.i1, 2), y = v.subword(c.i2, 2), z = v.subword(c.i3, 2);
    CHECK(x[1] != y[1]);
    CHECK(y[1] != z[1]);
    CHECK(z[1] != x[1]);
    // Joint occurrences never overlap or touch: the copy of x and the
    // copy of X sit in disjoint, non-adjacent intervals.
    int xs = c.i1, xe = c.i1 + 2;              // x at [i1, i1+L)
    int Xs = c.i3 + 2, Xe = c.i3 + 4;          // X at [i3+L, i3+2L)
    int n = static_cast<int>(v.length());
    bool separated = true;
    for (int p = xs; p < xe && separated; ++p) {
      for (int q = Xs; q < Xe; ++q) {
        if (((p % n) + n) % n == ((q % n) + n) % n) separated = false;
      }
    }
    CHECK(separated);
  }
}

TEST_CASE("imbalance statistic agrees with explicit pushforward") {
  Alphabet f2(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Word w = random_commutator_word({f2, 14, seed, true});
    CyclicWord v = cyclic_reduce(w).core;
    if (v.length() < 8) continue;
    const int L = 1;
    const int n = static_cast<int>(v.length());
    auto en = enumerate_tripods(v, L, 2);
    // Explicit d(mu): push every corner of every copy to its maximal
    // joint by direct letter extension.
    std::map<std::tuple<int, int, long>, long> dmu;
    auto corner = [&](int ia, int ic) {
      long e = 0;
      auto at = [&](long i) { return v.at(((i % n) + n) % n); };
      while (e < n && at(ia - 1 - e) == inverse_letter(at(ic + 2L * 0 + 2 * L + e))) ++e;
      int a = static_cast<int>(((ia - e) % n + n) % n);
      int b = (ic + L) % n;
      ++dmu[{a, b, L + e}];
    };
    for (const auto& c : en.copies) {
      corner(c.i1, c.i3);
      corner(c.i2, c.i1);
      corner(c.i3, c.i2);
    }
    Integer imbalance = 0;
    for (const auto& [key, weight] : dmu) {
      auto [a, b, len] = key;
      auto it = dmu.find({b, a, len});
      long other = it == dmu.end() ? 0 : it->second;
      imbalance += std::labs(weight - other);
    }
    auto report = imbalance_statistic(v, L, 2);
    if (en.copies.empty()) {
      CHECK(report.no_tripods);
      continue;
    }
    CHECK(report.mass == Integer(static_cast<long>(en.copies.size())));
    CHECK(report.boundary_mass == report.mass * 3);
    CHECK(report.imbalance == imbalance);
    // Trivial bound: |dmu - iota dmu| <= 2 |dmu|.
    CHECK(report.imbalance <= 2 * report.boundary_mass);
  }
}

TEST_CASE("imbalance of a tripod-free word is flagged") {
  auto report = imbalance_statistic(CyclicWord("abAB"), 1, 2);
  CHECK(report.no_tripods);
  CHECK(report.mass == 0);
  CHECK(report.imbalance == 0);
}

TEST_CASE("imbalance decays at desk scale (median over 20 seeds)") {
  Alphabet f2(2);
  const std::size_t n = 10000;
  std::vector<std::future<double>> futures;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    futures.push_back(std::async(std::launch::async, [seed, &f2]() {
      Word w = random_commutator_word({f2, n, 500 + seed, true});
      CyclicWord v = cyclic_reduce(w).core;
      int L = static_cast<int>(0.4 * scale_m(v.length(), 2));
      auto report = imbalance_statistic(v, L, 2);
      return report.imbalance.get_d() / report.boundary_mass.get_d();
    }));
  }
  std::vector<double> ratios;
  for (auto& f : futures) ratios.push_back(f.get());
  std::sort(ratios.begin(), ratios.end());
  double median = (ratios[9] + ratios[10]) / 2;
  CHECK(median <= 0.5);
}

TEST_CASE("assembled surface for abAB") {
  Alphabet f2(2);
  CyclicWord v("abAB");
  auto ub = assemble_upper_bound(v, 1, 2);
  CHECK(ub.upper_bound >= make_rational(1, 2));
  auto report = verify_fatgraph(ub.fatgraph, chain_of("abAB", f2), 2);
  CHECK(report.boundary_reduced);
  CHECK(report.boundary_matches);
  CHECK(report.length_identity);
  // scl_lp gives the floor.
  CHECK(ub.upper_bound >= scl::scl("abAB", f2, SolveMode::kExact).value);
}

TEST_CASE("assembly verifies and dominates exact scl") {
  Alphabet f2(2);
  for (std::uint64_t seed = 7; seed < 10; ++seed) {
    Word w = random_commutator_word({f2, 16, seed, true});
    CyclicWord v = cyclic_reduce(w).core;
    Chain c = chain_of(v.str(), f2);
    auto ub = assemble_upper_bound(v, default_tripod_length(v.length(), 2), 2);
    auto report = verify_fatgraph(ub.fatgraph, c, 2);
    CHECK(report.boundary_reduced);
    CHECK(report.boundary_matches);
    CHECK(report.length_identity);
    CHECK(ub.upper_bound >= scl::scl(c, SolveMode::kExact).value);
  }
  CHECK_THROWS_AS(assemble_upper_bound(CyclicWord("ab"), 1, 2), NotABoundaryError);
}

TEST_CASE("assembly sanity ceiling at n = 60") {
  Alphabet f2(2);
  Word w = random_commutator_word({f2, 60, 11, true});
  CyclicWord v = cyclic_reduce(w).core;
  Chain c = chain_of(v.str(), f2);
  auto ub = assemble_upper_bound(v, default_tripod_length(v.length(), 2), 2);
  CHECK(verify_fatgraph(ub.fatgraph, c, 2).boundary_matches);
  Rational exact = scl::scl(c, SolveMode::kExact).value;
  CHECK(ub.upper_bound >= exact);
  double scaled = to_double(ub.upper_bound) * std::log(60.0) / 60.0;
  CHECK(scaled <= 3.0 * std::log(3.0) / 6.0);
}
