#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>

#include "scl/chain.hpp"
#include "scl/rational.hpp"
#include "scl/rng.hpp"
#include "scl/word.hpp"

namespace scl {

/// Parameters for drawing one uniform reduced word.
struct RandomWordSpec {
  Alphabet alphabet;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool conditioned = false;  // require membership in [F,F]
  std::uint64_t retry_cap = 1'000'000'000ULL;
};

/// The characteristic scale m(n,k) = log(n)/log(2k-1) and companions.
struct ScaleParameters {
  double m;
  double L;
  double epsilon;

  static ScaleParameters at(std::size_t n, int rank, double L = 1.0, double epsilon = 0.0);
};

double scale_m(std::size_t n, int rank);

/// Uniform element of F_n; deterministic for a given spec.
Word random_reduced_word(const RandomWordSpec& spec);

/// Uniform element of F_n intersect [F,F], by rejection on the
/// abelianization. Throws ParityError for odd n, ExhaustionError when
/// the retry cap is reached.
Word random_commutator_word(const RandomWordSpec& spec);

/// Counts of all (cyclic) length-l subwords of one word.
class CountingMeasure {
 public:
  CountingMeasure(const std::string& v, std::size_t ell, bool cyclic);

  std::size_t ell() const { return ell_; }
  bool cyclic() const { return cyclic_; }
  std::size_t total_mass() const { return total_mass_; }

  /// C_sigma: number of copies of sigma (0 when absent).
  long count(const std::string& sigma) const;

  /// A_l = (1/2n) * sum over w of |C_w - C_{w^-1}|.
  Rational a_statistic() const;

  /// H_f = C_f(v) - C_f(v^-1) for a user weight on length-l words.
  double h_statistic(const std::function<double(const std::string&)>& f) const;

  const std::unordered_map<std::string, long>& counts() const { return counts_; }

 private:
  std::size_t ell_;
  bool cyclic_;
  std::size_t word_length_;
  std::size_t total_mass_ = 0;
  std::unordered_map<std::string, long> counts_;
};

/// subword_stats(v, l, cyclic): all (cyclic) length-l subword counts.
/// Cyclic mode requires v cyclically reduced.
CountingMeasure subword_stats(const Word& v, std::size_t ell, bool cyclic);
CountingMeasure subword_stats(const CyclicWord& v, std::size_t ell);

/// Statistics of Prop 2.5/2.7: S = distinct cyclic subwords of length
/// ceil(L*m), their total mass in v^-1, and the subset S' whose
/// inverses do not appear in v.
struct InverseMassReport {
  double L;
  std::size_t block_length;
  std::size_t card_S;
  long inverse_mass;
  std::size_t card_S_prime;
};

InverseMassReport inverse_subword_mass(const CyclicWord& v, double L, int rank);

/// u_m(a,b): number of reduced words a u b with |u| = m, via the
/// transfer matrix over letters.
Integer bridging_count(char a, char b, int m, const Alphabet& alphabet);

/// Monte-Carlo estimate of |F'_n| / |F_n| and the Sharp-normalized
/// fitted constant fraction * n^{k/2}.
struct CommutatorFraction {
  Rational fraction;
  double fitted_constant;
  std::uint64_t hits;
  std::uint64_t trials;
};

CommutatorFraction commutator_fraction(const Alphabet& alphabet, std::size_t n,
                                       std::uint64_t trials, std::uint64_t seed);

}  // namespace scl
