#pragma once

#include <gmpxx.h>

#include <string>

#include "scl/errors.hpp"

namespace scl {

/// Exact rational coefficients. GMP keeps values canonical
/// (reduced fraction, positive denominator) through arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Serializes as "p" for integers and "p/q" otherwise (canonical form).
inline std::string to_string(const Rational& q) {
  return q.get_str();
}

/// Parses "p" or "p/q"; throws SyntaxError on malformed input.
inline Rational parse_rational(const std::string& text, std::size_t err_offset = 0) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw SyntaxError("malformed rational '" + text + "'", err_offset);
  }
  if (q.get_den() == 0) throw SyntaxError("zero denominator", err_offset);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace scl
