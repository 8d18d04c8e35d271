#include "scl/sampling.hpp"

#include <cmath>
#include <vector>

#include "scl/errors.hpp"

namespace scl {

double scale_m(std::size_t n, int rank) {
  if (n == 0) throw RangeError("m(n,k) needs n >= 1");
  return std::log(static_cast<double>(n)) / std::log(static_cast<double>(2 * rank - 1));
}

ScaleParameters ScaleParameters::at(std::size_t n, int rank, double L, double epsilon) {
  return ScaleParameters{scale_m(n, rank), L, epsilon};
}

Word random_reduced_word(const RandomWordSpec& spec) {
  Rng rng(spec.seed);
  const int k = spec.alphabet.rank();
  std::string out;
  out.reserve(spec.n);
  auto letters = spec.alphabet.letters();
  for (std::size_t i = 0; i < spec.n; ++i) {
    if (out.empty()) {
      out.push_back(letters[rng.below_int(2 * k)]);
    } else {
      // Uniform over the 2k-1 letters that do not cancel the last one.
      char forbidden = inverse_letter(out.back());
      int r = rng.below_int(2 * k - 1);
      char c = letters[r];
      if (c == forbidden) c = letters[2 * k - 1];
      out.push_back(c);
    }
  }
  return Word(out);
}

Word random_commutator_word(const RandomWordSpec& spec) {
  if (spec.n % 2 != 0) {
    throw ParityError("no reduced word of odd length lies in [F,F]");
  }
  const int k = spec.alphabet.rank();
  auto letters = spec.alphabet.letters();
  std::string buf;
  buf.reserve(spec.n);
  std::vector<long> exponents(k, 0);
  for (std::uint64_t attempt = 0; attempt < spec.retry_cap; ++attempt) {
    Rng rng(split_seed(spec.seed, attempt));
    buf.clear();
    std::fill(exponents.begin(), exponents.end(), 0);
    for (std::size_t i = 0; i < spec.n; ++i) {
      char c;
      if (buf.empty()) {
        c = letters[rng.below_int(2 * k)];
      } else {
        char forbidden = inverse_letter(buf.back());
        int r = rng.below_int(2 * k - 1);
        c = letters[r];
        if (c == forbidden) c = letters[2 * k - 1];
      }
      buf.push_back(c);
      if (c >= 'a') {
        ++exponents[c - 'a'];
      } else {
        --exponents[c - 'A'];
      }
    }
    bool trivial = true;
    for (long e : exponents) trivial = trivial && e == 0;
    if (trivial) return Word(buf);
  }
  throw ExhaustionError("rejection sampling exhausted its retry cap");
}

CountingMeasure::CountingMeasure(const std::string& v, std::size_t ell, bool cyclic)
    : ell_(ell), cyclic_(cyclic), word_length_(v.size()) {
  if (ell < 1 || ell > v.size()) {
    throw RangeError("subword length out of range");
  }
  if (cyclic) {
    std::string doubled = v + v.substr(0, ell - 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      ++counts_[doubled.substr(i, ell)];
      ++total_mass_;
    }
  } else {
    for (std::size_t i = 0; i + ell <= v.size(); ++i) {
      ++counts_[v.substr(i, ell)];
      ++total_mass_;
    }
  }
}

long CountingMeasure::count(const std::string& sigma) const {
  auto it = counts_.find(sigma);
  return it == counts_.end() ? 0 : it->second;
}

Rational CountingMeasure::a_statistic() const {
  long sum = 0;
  for (const auto& [w, c] : counts_) {
    std::string wi = invert_letters(w);
    auto it = counts_.find(wi);
    long ci = it == counts_.end() ? 0 : it->second;
    if (it == counts_.end()) {
      // |C_w - 0| at w plus |0 - C_w| at the absent inverse.
      sum += 2 * c;
    } else {
      sum += std::abs(c - ci);
    }
  }
  Rational a(sum, 2 * static_cast<long>(word_length_));
  a.canonicalize();
  return a;
}

double CountingMeasure::h_statistic(const std::function<double(const std::string&)>& f) const {
  // C_f(v) - C_f(v^-1); counts in v^-1 equal counts of inverses in v.
  double total = 0;
  for (const auto& [w, c] : counts_) {
    total += f(w) * c;
    total -= f(invert_letters(w)) * c;
  }
  return total;
}

CountingMeasure subword_stats(const Word& v, std::size_t ell, bool cyclic) {
  if (cyclic && !is_cyclically_reduced(v.str())) {
    throw RangeError("cyclic counting requires a cyclically reduced word");
  }
  return CountingMeasure(v.str(), ell, cyclic);
}

CountingMeasure subword_stats(const CyclicWord& v, std::size_t ell) {
  return CountingMeasure(v.str(), ell, true);
}

InverseMassReport inverse_subword_mass(const CyclicWord& v, double L, int rank) {
  const std::size_t n = v.length();
  double m = scale_m(n, rank);
  auto block = static_cast<std::size_t>(std::ceil(L * m));
  if (block < 1 || block > n) {
    throw RangeError("block length exceeds the word length");
  }
  CountingMeasure fwd(v.str(), block, true);
  CountingMeasure bwd(invert_letters(v.str()), block, true);
  InverseMassReport report{};
  report.L = L;
  report.block_length = block;
  report.card_S = fwd.counts().size();
  report.inverse_mass = 0;
  report.card_S_prime = 0;
  for (const auto& [sigma, c] : fwd.counts()) {
    (void)c;
    long inv_copies = bwd.count(sigma);
    report.inverse_mass += inv_copies;
    if (inv_copies == 0) ++report.card_S_prime;
  }
  return report;
}

Integer bridging_count(char a, char b, int m, const Alphabet& alphabet) {
  alphabet.require(a);
  alphabet.require(b);
  if (m < 0) throw RangeError("bridging length must be nonnegative");
  const int q = alphabet.num_letters();
  // Transfer matrix M[x][y] = 1 iff y != x^-1; count paths
  // a -> u_1 -> ... -> u_m -> b, i.e. (M^{m+1})[a][b].
  std::vector<Integer> row(q, 0);
  row[Alphabet::letter_index(a)] = 1;
  for (int step = 0; step < m + 1; ++step) {
    Integer total = 0;
    for (const auto& x : row) total += x;
    std::vector<Integer> next(q);
    for (int y = 0; y < q; ++y) {
      next[y] = total - row[y ^ 1];  // all predecessors except the inverse letter
    }
    row.swap(next);
  }
  return row[Alphabet::letter_index(b)];
}

CommutatorFraction commutator_fraction(const Alphabet& alphabet, std::size_t n,
                                       std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw RangeError("need at least one trial");
  std::uint64_t hits = 0;
  RandomWordSpec spec{alphabet, n, 0, false};
  for (std::uint64_t t = 0; t < trials; ++t) {
    spec.seed = split_seed(seed, t);
    Word w = random_reduced_word(spec);
    if (is_homologically_trivial(w.str(), alphabet)) ++hits;
  }
  Rational fraction(static_cast<unsigned long>(hits), static_cast<unsigned long>(trials));
  fraction.canonicalize();
  double fitted = to_double(fraction) *
                  std::pow(static_cast<double>(n), alphabet.rank() / 2.0);
  return CommutatorFraction{fraction, fitted, hits, trials};
}

}  // namespace scl
