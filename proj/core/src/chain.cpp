#include "scl/chain.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace scl {

Chain::Chain(std::vector<ChainTerm> terms, const Alphabet& alphabet)
    : terms_(std::move(terms)), rank_(alphabet.rank()) {
  for (const auto& t : terms_) alphabet.require_word(t.word.str());
}

Rational Chain::total_length() const {
  Rational sum = 0;
  for (const auto& t : terms_) sum += t.coefficient * Rational(static_cast<long>(t.word.length()));
  return sum;
}

std::size_t Chain::total_letters() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n += t.word.length();
  return n;
}

std::string Chain::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.coefficient != 1) os << to_string(t.coefficient) << "*";
    os << t.word.str();
  }
  return os.str();
}

std::vector<long> abelianization(const std::string& word, const Alphabet& alphabet) {
  std::vector<long> e(alphabet.rank(), 0);
  for (char c : word) {
    alphabet.require(c);
    if (c >= 'a') {
      e[c - 'a'] += 1;
    } else {
      e[c - 'A'] -= 1;
    }
  }
  return e;
}

bool is_homologically_trivial(const std::string& word, const Alphabet& alphabet) {
  for (long x : abelianization(word, alphabet)) {
    if (x != 0) return false;
  }
  return true;
}

std::vector<Rational> abelianization(const Chain& c) {
  std::vector<Rational> e(c.rank(), Rational(0));
  Alphabet alphabet(c.rank());
  for (const auto& t : c.terms()) {
    auto we = abelianization(t.word.str(), alphabet);
    for (int g = 0; g < c.rank(); ++g) e[g] += t.coefficient * Rational(we[g]);
  }
  return e;
}

Chain normalize_chain(const Chain& c) {
  std::map<CyclicWord, Rational> acc;
  for (const auto& term : c.terms_) {
    if (term.coefficient == 0 || term.word.empty()) continue;
    auto [root, power] = primitive_root(term.word.str());
    Rational coeff = term.coefficient * Rational(power);
    CyclicWord w(root);
    if (coeff < 0) {
      w = w.inverse();
      coeff = -coeff;
    }
    acc[w] += coeff;
  }
  // Cancel w against w^-1 (w^-1 = -w in B1^H).
  std::map<CyclicWord, Rational> folded;
  for (const auto& [w, t] : acc) {
    if (t == 0) continue;
    CyclicWord wi = w.inverse();
    if (w.str() <= wi.str()) {
      folded[w] += t;
    } else {
      folded[wi] -= t;
    }
  }
  Chain out;
  out.rank_ = c.rank_;
  for (const auto& [w, t] : folded) {
    if (t == 0) continue;
    if (t > 0) {
      out.terms_.push_back({t, w});
    } else {
      out.terms_.push_back({-t, w.inverse()});
    }
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const ChainTerm& a, const ChainTerm& b) { return a.word < b.word; });
  out.normalized_ = true;
  out.homologically_trivial_ = true;
  for (const auto& x : abelianization(out)) {
    if (x != 0) out.homologically_trivial_ = false;
  }
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  const Alphabet& alphabet;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }

  Rational read_coefficient() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
      ++pos;
    }
    if (pos == start) return Rational(1);
    Rational q = parse_rational(text.substr(start, pos - start), start);
    skip_space();
    if (pos >= text.size() || text[pos] != '*') {
      throw SyntaxError("expected '*' after coefficient", pos);
    }
    ++pos;
    return q;
  }

  std::string read_word() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
      if (!alphabet.contains(text[pos])) {
        throw AlphabetError(std::string("letter '") + text[pos] + "' is outside the rank-" +
                            std::to_string(alphabet.rank()) + " alphabet");
      }
      ++pos;
    }
    if (pos == start) throw SyntaxError("expected a word", pos);
    return text.substr(start, pos - start);
  }
};

}  // namespace

Chain parse_chain(const std::string& text, const Alphabet& alphabet) {
  Parser p{text, alphabet};
  std::vector<ChainTerm> terms;
  bool first = true;
  while (!p.done()) {
    int sign = 1;
    p.skip_space();
    if (p.text[p.pos] == '+' || p.text[p.pos] == '-') {
      sign = p.text[p.pos] == '-' ? -1 : 1;
      ++p.pos;
    } else if (!first) {
      throw SyntaxError("expected '+' or '-' between terms", p.pos);
    }
    Rational coeff = p.read_coefficient() * sign;
    std::string raw = p.read_word();
    Word w = reduce(raw, alphabet);
    auto reduction = cyclic_reduce(w);
    terms.push_back({coeff, reduction.core});
    first = false;
  }
  if (first) throw SyntaxError("empty chain expression", 0);
  Chain out;
  out.rank_ = alphabet.rank();
  out.terms_ = std::move(terms);
  return out;
}

Chain scale_chain(const Rational& q, const Chain& c) {
  Chain out = c;
  for (auto& t : out.terms_) t.coefficient *= q;
  return normalize_chain(out);
}

Chain invert_chain(const Chain& c) {
  Chain out = c;
  for (auto& t : out.terms_) t.word = t.word.inverse();
  return normalize_chain(out);
}

Chain add_chains(const Chain& a, const Chain& b) {
  Chain out = a;
  out.rank_ = std::max(a.rank_, b.rank_);
  for (const auto& t : b.terms_) out.terms_.push_back(t);
  return normalize_chain(out);
}

Chain chain_of(const std::string& text, const Alphabet& alphabet) {
  return normalize_chain(parse_chain(text, alphabet));
}

}  // namespace scl
