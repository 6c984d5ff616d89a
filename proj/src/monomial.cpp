#include "dicer/monomial.hpp"

#include <sstream>
#include <stdexcept>

#include "dicer/rational.hpp"

namespace dicer {

namespace {

void check_same_ring(const Monomial& a, const Monomial& b) {
  if (a.vars() != b.vars()) throw std::invalid_argument("monomials from different rings");
}

}  // namespace

long Monomial::degree() const {
  long d = 0;
  for (long e : exponents) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  check_same_ring(*this, other);
  for (int i = 0; i < vars(); ++i)
    if (exponents[i] > other.exponents[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  check_same_ring(a, b);
  Monomial r = a;
  for (int i = 0; i < a.vars(); ++i)
    if (b.exponents[i] > r.exponents[i]) r.exponents[i] = b.exponents[i];
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  check_same_ring(a, b);
  Monomial r = a;
  for (int i = 0; i < a.vars(); ++i) r.exponents[i] += b.exponents[i];
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  if (!b.divides(a)) throw std::invalid_argument("monomial quotient is not a monomial");
  Monomial r = a;
  for (int i = 0; i < a.vars(); ++i) r.exponents[i] -= b.exponents[i];
  return r;
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < m.vars(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (m.exponents[i] > 1) os << "^" << m.exponents[i];
    first = false;
  }
  if (first) return "1";
  return os.str();
}

Monomial monomial_from_point(const Point& p) {
  Monomial m;
  m.exponents.reserve(p.size());
  for (const Rational& c : p) {
    if (!is_integer(c)) throw std::invalid_argument("non-integral point has no monomial");
    long e = to_long_checked(numerator(c));
    if (e < 0) throw std::invalid_argument("negative exponent");
    m.exponents.push_back(e);
  }
  return m;
}

Point point_from_monomial(const Monomial& m) {
  Point p;
  p.reserve(m.exponents.size());
  for (long e : m.exponents) p.push_back(Rational(e));
  return p;
}

}  // namespace dicer
