#pragma once

// Cellular resolutions of monomial ideals and their verification.
//
// A labeled complex resolves an ideal when every restriction to the cells
// whose label divides a fixed multidegree is empty or acyclic. Only the lcm
// closure of the vertex labels has to be scanned: between closure points the
// restriction does not change. Acyclicity is decided by the reduced homology
// of the restriction's order complex, an independent route that never looks
// at how the complex was built.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dicer/complex.hpp"
#include "dicer/homology.hpp"
#include "dicer/monomial.hpp"

namespace dicer {

struct MonomialIdeal {
  std::vector<Monomial> generators;  // minimal, lex sorted

  MonomialIdeal() = default;
  // Minimalizes: drops duplicates and every monomial divisible by another.
  explicit MonomialIdeal(std::vector<Monomial> gens);

  int vars() const;
  bool contains(const Monomial& m) const;
  bool operator==(const MonomialIdeal& o) const { return generators == o.generators; }
};

// Generated by the lattice points of a diced polytope.
MonomialIdeal ideal_of_polytope(const Polytope& p);

// All lcms of subsets of the given monomials, the empty subset excluded.
// Throws when the closure exceeds the guard size.
std::vector<Monomial> lcm_closure(const std::vector<Monomial>& gens);

struct ResolutionFailure {
  Monomial degree;
  ReducedHomology homology;  // nonzero reduced homology of the restriction
};

struct ResolutionCheck {
  bool resolves = false;
  std::vector<ResolutionFailure> failures;  // ascending by degree, lex
};

// Decides whether the labeled complex resolves the ideal. The vertex labels
// must minimalize to exactly the ideal's generators.
ResolutionCheck verify_cellular_resolution(const PolyComplex& x, const MonomialIdeal& ideal,
                                           const FieldSpec& field);

struct MinimalityReport {
  bool minimal = false;
  // Comparable cell pairs (lower, upper) with equal labels, ascending.
  std::vector<std::pair<int, int>> witnesses;
};

// A resolution is minimal when no two nested cells share a label; the scan
// covers all comparable pairs, not only covering ones.
MinimalityReport is_minimal(const PolyComplex& x);

struct BettiTable {
  // (homological index, multidegree) -> rank. The index of a cell is its
  // dimension.
  std::map<std::pair<int, Monomial>, long> entries;

  std::vector<long> totals() const;  // per homological index
  bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

// Reads the Betti table off a minimal resolution; throws on non-minimal
// input with the first witness pair in the message.
BettiTable betti_table(const PolyComplex& x);

// Independent Betti numbers straight from the definition: the rank at
// multidegree m in index i is the reduced homology in degree i-1 of the
// simplicial complex of coordinate subsets S with x^(m - chi_S) still in
// the ideal. Limited to 12 generators.
BettiTable koszul_betti_oracle(const MonomialIdeal& ideal, const FieldSpec& field);

}  // namespace dicer
