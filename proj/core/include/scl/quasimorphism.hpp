#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scl/rational.hpp"
#include "scl/word.hpp"

namespace scl {

/// A finite set of reduced nonempty words over the alphabet.
class CountingSet {
 public:
  explicit CountingSet(std::vector<std::string> words);

  const std::vector<std::string>& words() const { return words_; }
  CountingSet inverses() const;

 private:
  std::vector<std::string> words_;
};

/// c_S = maximal number of disjoint copies of elements of S in w;
/// h_S = c_S(w) - c_{S^-1}(w).
struct SmallCount {
  long c_s = 0;
  long h_s = 0;
};
SmallCount small_count(const CountingSet& s, const Word& w);

/// Exact disjoint-packing density of S on the infinite periodic word
/// with period w: copies per period, as a rational.
Rational packing_density(const CountingSet& s, const CyclicWord& w);

/// Homogenized small counting quasimorphism on a cyclic word:
/// h̄_S(w) = density(S) - density(S^-1). Exact.
Rational homogenized_qm(const CountingSet& s, const CyclicWord& w);

/// Max observed |h_S(gh) - h_S(g) - h_S(h)| over random pairs.
long defect_probe(const CountingSet& s, int trials, int max_len, std::uint64_t seed,
                  int rank);

/// Quasimorphism lower-bound witness: cyclic v tiled into blocks of
/// length ceil((1+epsilon) m); S' keeps the blocks whose inverses do
/// not appear in v; scl(v) >= homogenized value / 12.
struct Certificate {
  std::string word;  // canonical rotation of v
  int rank = 2;
  double epsilon = 0;
  double L = 0;
  double m = 0;
  std::size_t block_length = 0;
  std::size_t offset = 0;
  std::vector<std::string> blocks;   // tile words, in tiling order
  std::vector<std::string> s_prime;  // sorted, distinct
  Rational value;                    // homogenized value of h_{S'}
  int defect_bound = 6;
  Rational lower_bound;              // value / (2 * 6)
};

/// Builds the certificate. Requires v cyclically reduced, homologically
/// trivial and of length >= 4; DegenerateError when no block fits.
Certificate rigidity_certificate(const Word& v, double epsilon, int rank,
                                 std::size_t offset = 0);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

/// Self-contained re-verification; trusts nothing but the word.
struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> failures;
};
CertificateCheck verify_certificate(const Certificate& cert);

}  // namespace scl
