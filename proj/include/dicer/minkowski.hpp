#pragma once

// Minkowski sums of standard simplices and fine mixed subdivisions.
//
// A summand simplex is conv{e_i : i in S} for a nonempty set S of 1-based
// basis indices.  A mixed cell picks one face B_i of every summand; the cell
// is fine when the dimensions of the B_i add up to the dimension of their
// sum, which is exactly affine independence of their directions.  Shipped
// subdivisions are validated (volume additivity, pairwise intersections are
// faces of both cells, containment in the sum) and can then be pushed
// through the resolution pipeline as labeled complexes.

#include <optional>
#include <string>
#include <vector>

#include "dicer/complex.hpp"
#include "dicer/geometry.hpp"
#include "dicer/homology.hpp"
#include "dicer/monomial.hpp"
#include "dicer/resolution.hpp"

namespace dicer {

struct SimplexSpec {
  std::vector<int> vertex_indices;  // 1-based, strictly increasing
};

// conv{e_i : i in s} inside R^ambient.
Polytope simplex_polytope(const SimplexSpec& s, int ambient);

struct MixedCellSpec {
  std::vector<SimplexSpec> summands;  // B_1, ..., B_m, one face per summand
};

struct MixedSubdivision {
  std::vector<SimplexSpec> summands;  // the P_i being summed
  std::vector<MixedCellSpec> cells;
};

// Hull of all sums of one vertex per summand.  Ambient 0 means infer the
// dimension from the largest basis index used.
Polytope minkowski_sum(const std::vector<SimplexSpec>& summands, int ambient = 0);

struct MixedCell {
  Polytope polytope;
  // Exponent of x_i counts the summand faces whose index set contains i.
  // Always agrees with the lattice label of the polytope.
  Monomial label;
};

// Throws std::invalid_argument("not a fine mixed cell ...") when the summand
// dimensions do not add up to the dimension of the sum.
MixedCell mixed_cell_polytope(const MixedCellSpec& c, int ambient = 0);

struct SubdivisionReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Structural checks: every cell lists one face per summand, cell volumes add
// up to the volume of the sum, pairwise intersections are faces of both
// cells, and every cell lies inside the sum.
SubdivisionReport validate_mixed_subdivision(const MixedSubdivision& s);

// Per cell: every face is diced, the cell is totally sharp, the sharp cell
// is the translated unit simplex read off the label, the label degree equals
// the total vertex count of the summand faces, and every facet has strictly
// smaller label degree.
SubdivisionReport verify_sharpness_hypotheses(const MixedSubdivision& s);

struct MixedResolutionReport {
  PolyComplex complex;  // the labeled complex of the subdivision
  bool resolves = false;
  std::vector<ResolutionFailure> failures;
  bool minimal = false;
  std::vector<std::pair<int, int>> equal_label_pairs;
  BettiTable betti;   // filled when minimal
  BettiTable oracle;  // independent count for the same ideal
  bool oracle_agrees = false;
};

// Assembles the labeled complex of the subdivision, verifies that it
// resolves the ideal of the sum, checks minimality, and compares the Betti
// table with the homological oracle.  Throws std::invalid_argument when the
// subdivision fails validation or the hypothesis checks.
MixedResolutionReport resolve_mixed_subdivision(const MixedSubdivision& s, const FieldSpec& field);

struct Fixture {
  std::string name;
  Polytope polytope;
  std::optional<MixedSubdivision> mixed;  // set for Minkowski sum fixtures
  bool diced = true;
  bool sharp = true;
  bool totally_sharp = true;
  std::vector<long> grid_f_vector;      // f-vector of the sliced complex
  std::vector<long> resolution_totals;  // minimal Betti totals, {} when none
};

const std::vector<Fixture>& builtin_fixtures();

// Null when the name is unknown.
const Fixture* fixture_named(const std::string& name);

}  // namespace dicer
