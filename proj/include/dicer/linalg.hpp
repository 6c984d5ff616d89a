#pragma once

// Small dense exact linear algebra over the rationals, plus the one integer
// lattice routine we need (a basis of the integer kernel of an integer
// matrix, used to express volumes relative to the lattice of an affine
// hull).  Everything is desk scale: matrices here have at most a few dozen
// rows and columns.

#include <optional>
#include <vector>

#include "dicer/rational.hpp"

namespace dicer {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row major

int rank_of(Mat m);

Rational determinant(Mat m);  // square input

Mat inverse(Mat m);  // square nonsingular input

// Solve a * x = b.  Returns one solution, or nullopt if inconsistent.
std::optional<Vec> solve_linear(Mat a, Vec b);

// Basis of { x : a * x = 0 } over the rationals.
std::vector<Vec> nullspace(Mat a);

// Basis of { x in Z^n : a * x = 0 } for an integer matrix a.  The basis is
// a lattice basis (saturated), computed by column reduction with unimodular
// column operations.
std::vector<std::vector<Int>> integer_kernel_basis(std::vector<std::vector<Int>> a, int n);

// Clear denominators and divide by the gcd of all entries; the result is a
// primitive integer vector parallel to v.  Zero vector stays zero.
std::vector<Int> primitive_integer_vector(const Vec& v);

}  // namespace dicer
