#include "scl/word.hpp"

#include <algorithm>

namespace scl {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 2) throw Error("free group rank must be at least 2");
  if (rank > 26) throw Error("rank is limited to 26 by the a..z convention");
}

bool Alphabet::contains(char c) const {
  return (c >= 'a' && c < 'a' + rank_) || (c >= 'A' && c < 'A' + rank_);
}

void Alphabet::require(char c) const {
  if (!contains(c)) {
    throw AlphabetError(std::string("letter '") + c + "' is outside the rank-" +
                        std::to_string(rank_) + " alphabet");
  }
}

void Alphabet::require_word(const std::string& w) const {
  for (char c : w) require(c);
}

std::vector<char> Alphabet::letters() const {
  std::vector<char> out;
  out.reserve(2 * rank_);
  for (int g = 0; g < rank_; ++g) {
    out.push_back(static_cast<char>('a' + g));
    out.push_back(static_cast<char>('A' + g));
  }
  return out;
}

int Alphabet::letter_index(char c) {
  return c >= 'a' ? 2 * (c - 'a') : 2 * (c - 'A') + 1;
}

char Alphabet::letter_at(int index) {
  int g = index / 2;
  return static_cast<char>(index % 2 == 0 ? 'a' + g : 'A' + g);
}

bool lex_less(const std::string& u, const std::string& v) {
  return std::lexicographical_compare(
      u.begin(), u.end(), v.begin(), v.end(),
      [](char x, char y) { return letter_less(x, y); });
}

Word::Word(std::string letters) : letters_(std::move(letters)) {
  if (!is_reduced(letters_)) throw Error("word is not reduced: " + letters_);
}

std::string reduce_letters(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (!out.empty() && is_inverse_pair(out.back(), c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Word reduce(const std::string& raw, const Alphabet& alphabet) {
  alphabet.require_word(raw);
  return Word(reduce_letters(raw));
}

std::string invert_letters(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = inverse_letter(c);
  return out;
}

Word invert(const Word& w) { return Word(invert_letters(w.str())); }

Word concat(const Word& u, const Word& v) {
  return Word(reduce_letters(u.str() + v.str()));
}

bool is_reduced(const std::string& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (is_inverse_pair(w[i], w[i + 1])) return false;
  }
  return true;
}

bool is_cyclically_reduced(const std::string& w) {
  if (!is_reduced(w)) return false;
  if (w.size() >= 2 && is_inverse_pair(w.back(), w.front())) return false;
  return true;
}

std::string least_rotation(const std::string& s) {
  // Booth's algorithm over the a < A < b < B letter order.
  if (s.empty()) return s;
  const std::size_t n = s.size();
  auto at = [&](std::size_t i) { return Alphabet::letter_index(s[i % n]); };
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    int a = at(i + k), b = at(j + k);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i = std::max(i + k + 1, j);
      j = i + 1;
    } else {
      j = j + k + 1;
      if (j == i) ++j;
    }
    k = 0;
  }
  std::size_t start = std::min(i, j);
  return s.substr(start) + s.substr(0, start);
}

std::pair<std::string, int> primitive_root(const std::string& w) {
  const std::size_t n = w.size();
  if (n == 0) return {w, 1};
  // KMP failure function gives the smallest period when it divides n.
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = fail[i - 1];
    while (k > 0 && w[i] != w[k]) k = fail[k - 1];
    if (w[i] == w[k]) ++k;
    fail[i] = k;
  }
  std::size_t period = n - fail[n - 1];
  if (period < n && n % period == 0) {
    return {w.substr(0, period), static_cast<int>(n / period)};
  }
  return {w, 1};
}

CyclicWord::CyclicWord(const Word& w) : CyclicWord(w.str()) {}

CyclicWord::CyclicWord(const std::string& w) {
  if (!is_cyclically_reduced(w)) {
    throw Error("word is not cyclically reduced: " + w);
  }
  rep_ = least_rotation(w);
}

CyclicWord CyclicWord::inverse() const {
  if (rep_.empty()) return CyclicWord();
  return CyclicWord(invert_letters(rep_));
}

std::string CyclicWord::subword(std::size_t i, std::size_t len) const {
  std::string out;
  out.reserve(len);
  for (std::size_t t = 0; t < len; ++t) out.push_back(rep_[(i + t) % rep_.size()]);
  return out;
}

CyclicReduction cyclic_reduce(const Word& w) {
  std::string s = w.str();
  std::string conj;
  while (s.size() >= 2 && is_inverse_pair(s.back(), s.front())) {
    conj.push_back(s.front());
    s.erase(s.begin());
    s.pop_back();
  }
  return CyclicReduction{CyclicWord(s), Word(conj)};
}

}  // namespace scl
