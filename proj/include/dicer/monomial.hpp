#pragma once

// Monomials in a fixed polynomial ring, stored as exponent vectors.  The
// variable count is implicit in the vector length; all operations require
// matching lengths.

#include <string>
#include <vector>

#include "dicer/geometry.hpp"

namespace dicer {

struct Monomial {
  std::vector<long> exponents;

  int vars() const { return static_cast<int>(exponents.size()); }
  long degree() const;
  bool divides(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;
  // Lex order on exponent vectors; used wherever monomials are sorted.
  bool operator<(const Monomial& other) const { return exponents < other.exponents; }
};

Monomial lcm(const Monomial& a, const Monomial& b);

// Exponent-wise product and quotient; quotient requires divisibility.
Monomial operator*(const Monomial& a, const Monomial& b);
Monomial operator/(const Monomial& a, const Monomial& b);

// "x1^2*x3" style; the unit monomial prints as "1".
std::string to_string(const Monomial& m);

// A lattice point becomes the monomial with those exponents.  Rejects
// non-integral and negative coordinates.
Monomial monomial_from_point(const Point& p);
Point point_from_monomial(const Monomial& m);

}  // namespace dicer
