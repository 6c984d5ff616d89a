#pragma once

// Exact arithmetic used everywhere in dicer.  All geometric predicates are
// decided over the rationals; floating point is banned from the whole system
// because several of them (dicedness, sharpness) hinge on exact equality of
// coordinates like (1/2, 1).

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicer {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_floor(const Rational& q) {
  Int n = numerator(q), d = denominator(q);  // d > 0 by normalization
  Int t = n / d;
  if (t * d > n) --t;
  return t;
}

inline Int rational_ceil(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int t = n / d;
  if (t * d < n) ++t;
  return t;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline std::string to_string(const Int& n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

// "long" accessor for small exact integers (exponents, dimensions).
inline long to_long_checked(const Int& n) {
  if (n > Int(1) << 40 || n < -(Int(1) << 40))
    throw std::overflow_error("integer out of desk-scale range");
  return static_cast<long>(n);
}

}  // namespace dicer
