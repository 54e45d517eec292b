#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace vetocore {

// All measure/capacity arithmetic in this library is exact. Rational is GMP's
// canonical-form rational; Integer its arbitrary-precision integer.
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for malformed input text; line is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

Rational make_rational(long num, long den);

// Accepts "p/q", decimals ("0.25", "-1.5", ".5"), and plain integers.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (plain "p" when the denominator is 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace vetocore
