#pragma once

// Reduced simplicial homology over the rationals or a prime field.
//
// Complexes are always augmented: the empty face is a legitimate face and
// the reduced group in degree -1 detects the difference between the void
// complex (no faces at all) and the complex whose only face is empty.

#include <string>
#include <vector>

#include "dicer/rational.hpp"

namespace dicer {

struct FieldSpec {
  bool rational = true;
  long p = 0;  // prime characteristic when not rational
};

// "q" for the rationals, "gf:P" for the field with P elements, P prime.
FieldSpec parse_field(const std::string& text);
std::string to_string(const FieldSpec& f);

struct SimplicialComplex {
  int vertices = 0;
  // All faces, the empty face included, each a sorted vertex list, the list
  // sorted by (size, lex). No faces at all encodes the void complex.
  std::vector<std::vector<int>> faces;
};

// The chains of the partial order generated by the covering lists; element
// ids become vertices. facets_of[c] lists the elements covered by c.
SimplicialComplex order_complex(const std::vector<std::vector<int>>& facets_of);

struct ReducedHomology {
  // dims[k] is the reduced Betti number in degree k-1, so index 0 holds the
  // degree -1 group.
  std::vector<long> dims;

  bool trivial() const;
  long at(int degree) const;  // degree >= -1, zero when out of range
};

// Reduced homology of an augmented simplicial complex, computed by exact
// rank after collapsing free pairs.
ReducedHomology reduced_homology(const SimplicialComplex& k, const FieldSpec& field);

}  // namespace dicer
