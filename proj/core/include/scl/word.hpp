#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "scl/errors.hpp"

namespace scl {

// Letters are plain ASCII: generators 'a','b','c',... and inverses
// 'A','B','C',... (first k of each). Words are strings of letters.

/// Free generating set of a free group of rank k >= 2.
class Alphabet {
 public:
  explicit Alphabet(int rank);

  int rank() const { return rank_; }
  int num_letters() const { return 2 * rank_; }

  bool contains(char c) const;
  /// Throws AlphabetError when c is not one of the 2k letters.
  void require(char c) const;
  void require_word(const std::string& w) const;

  /// Letters in the canonical order a, A, b, B, ... used for
  /// enumeration and canonical rotations.
  std::vector<char> letters() const;

  /// Index of a letter in the canonical order (a=0, A=1, b=2, ...).
  static int letter_index(char c);
  static char letter_at(int index);

 private:
  int rank_;
};

inline char inverse_letter(char c) {
  return static_cast<char>(c >= 'a' ? c - 'a' + 'A' : c - 'A' + 'a');
}

inline bool is_inverse_pair(char x, char y) { return x != y && inverse_letter(x) == y; }

/// A letter order that keeps each generator adjacent to its inverse:
/// a < A < b < B < ... All canonical rotations use this order.
inline bool letter_less(char x, char y) {
  return Alphabet::letter_index(x) < Alphabet::letter_index(y);
}

bool lex_less(const std::string& u, const std::string& v);

/// Freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;
  /// Requires `letters` already reduced; use reduce() for raw input.
  explicit Word(std::string letters);

  static Word identity() { return Word(); }

  const std::string& str() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  char operator[](std::size_t i) const { return letters_[i]; }

  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  auto operator<=>(const Word& other) const { return letters_ <=> other.letters_; }

 private:
  std::string letters_;
};

/// Free reduction of an arbitrary letter sequence; validates letters
/// against the alphabet. Idempotent.
Word reduce(const std::string& raw, const Alphabet& alphabet);

/// Reduction without alphabet validation (input letters already vetted).
std::string reduce_letters(const std::string& raw);

/// Reverse-and-invert. An involution; preserves length.
Word invert(const Word& w);
std::string invert_letters(const std::string& w);

/// Reduced product of reduced words.
Word concat(const Word& u, const Word& v);

bool is_reduced(const std::string& w);
bool is_cyclically_reduced(const std::string& w);

/// Cyclically reduced conjugacy-class representative, stored as the
/// lexicographically least rotation (order a < A < b < B < ...).
class CyclicWord {
 public:
  CyclicWord() = default;
  /// Requires a cyclically reduced word; rotates it to canonical form.
  explicit CyclicWord(const Word& w);
  explicit CyclicWord(const std::string& w);

  const std::string& str() const { return rep_; }
  std::size_t length() const { return rep_.size(); }
  bool empty() const { return rep_.empty(); }
  char at(std::size_t i) const { return rep_[i % rep_.size()]; }

  CyclicWord inverse() const;
  /// The underlying word read from the canonical rotation.
  Word word() const { return Word(rep_); }

  /// Cyclic subword of length len starting at position i (wraps; len may
  /// exceed the period).
  std::string subword(std::size_t i, std::size_t len) const;

  bool operator==(const CyclicWord& other) const { return rep_ == other.rep_; }
  auto operator<=>(const CyclicWord& other) const { return rep_ <=> other.rep_; }

 private:
  std::string rep_;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicReduction {
  CyclicWord core;
  Word conjugator;
};
CyclicReduction cyclic_reduce(const Word& w);

/// Least rotation of a string in the a < A < b < B order (Booth).
std::string least_rotation(const std::string& s);

/// Shortest u with w = u^p, and the exponent p (p = 1 for primitives).
std::pair<std::string, int> primitive_root(const std::string& w);

struct WordHash {
  std::size_t operator()(const Word& w) const { return std::hash<std::string>()(w.str()); }
};
struct CyclicWordHash {
  std::size_t operator()(const CyclicWord& w) const {
    return std::hash<std::string>()(w.str());
  }
};

}  // namespace scl
