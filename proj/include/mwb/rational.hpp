#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mwb {

/// Exact rational number. GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed input, bad preconditions and structural validation failures.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p", "-p" or "p/q". Rejects zero denominators and stray characters.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace mwb
