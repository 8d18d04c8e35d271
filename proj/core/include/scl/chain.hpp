#pragma once

#include <string>
#include <vector>

#include "scl/rational.hpp"
#include "scl/word.hpp"

namespace scl {

/// One term of a chain: coefficient times a conjugacy class.
struct ChainTerm {
  Rational coefficient;
  CyclicWord word;
};

/// A formal rational combination of group elements. Terms may be in any
/// state until normalize() is applied; normalized chains have cyclically
/// reduced primitive words, positive coefficients, and distinct terms.
class Chain {
 public:
  Chain() = default;
  Chain(std::vector<ChainTerm> terms, const Alphabet& alphabet);

  const std::vector<ChainTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int rank() const { return rank_; }
  bool homologically_trivial() const { return homologically_trivial_; }

  /// Sum of coefficient * |word| over all terms.
  Rational total_length() const;
  std::size_t total_letters() const;

  std::string str() const;

 private:
  friend Chain normalize_chain(const Chain& c);
  friend Chain parse_chain(const std::string& text, const Alphabet& alphabet);
  friend Chain scale_chain(const Rational& q, const Chain& c);
  friend Chain invert_chain(const Chain& c);
  friend Chain add_chains(const Chain& a, const Chain& b);

  std::vector<ChainTerm> terms_;
  int rank_ = 2;
  bool homologically_trivial_ = false;
  bool normalized_ = false;

 public:
  bool normalized() const { return normalized_; }
};

/// Per-generator signed exponent sums weighted by coefficients.
/// The chain is a 1-boundary iff the result is the zero vector.
std::vector<Rational> abelianization(const Chain& c);
std::vector<long> abelianization(const std::string& word, const Alphabet& alphabet);
bool is_homologically_trivial(const std::string& word, const Alphabet& alphabet);

/// B1^H normal form: cyclically reduce each term, fold negative
/// coefficients into word inversion, rewrite proper powers w = u^p as
/// p*u, merge equal terms, and cancel w against w^-1. Idempotent.
Chain normalize_chain(const Chain& c);

/// Grammar: terms separated by '+'/'-'; term = [rational '*']? word.
/// Returns the parsed, unnormalized chain.
Chain parse_chain(const std::string& text, const Alphabet& alphabet);

Chain scale_chain(const Rational& q, const Chain& c);
Chain invert_chain(const Chain& c);
Chain add_chains(const Chain& a, const Chain& b);

/// Convenience: parse + normalize a single chain expression.
Chain chain_of(const std::string& text, const Alphabet& alphabet);

}  // namespace scl
