#pragma once

// Dicedness and sharpness of lattice polytopes in the nonnegative orthant.
//
// A polytope is diced when slicing it by every integer coordinate hyperplane
// produces only lattice vertices; its label is then the coordinatewise max
// over its lattice points.  Sharpness asks for a full-dimensional cell of the
// sliced complex carrying the full label; it is decided geometrically by
// intersecting with the halfspaces one unit below the label in every
// coordinate.

#include <optional>
#include <string>
#include <vector>

#include "dicer/complex.hpp"
#include "dicer/geometry.hpp"
#include "dicer/monomial.hpp"

namespace dicer {

struct DicedReport {
  bool diced = false;
  std::optional<Point> witness;  // lex-least non-integral subdivision vertex
};

DicedReport is_diced(const Polytope& p);
// Overload reusing an already built subdivision of p.
DicedReport is_diced(const PolyComplex& subdivision);

// Coordinatewise max over the lattice points of p.  Requires p diced.
Monomial polytope_label(const Polytope& p);

struct SharpnessReport {
  bool is_sharp = false;
  Monomial label;                 // the full label of p
  Polytope region;                // p cut one unit below the label everywhere
  std::optional<Polytope> sigma;  // the witness cell, present when sharp
  std::string note;               // dimension comparison, for diagnostics
};

// Decides sharpness of a diced polytope and returns the witness cell.
SharpnessReport sharp_cell(const Polytope& p);

struct TotalSharpnessReport {
  bool totally_sharp = false;
  std::optional<Polytope> witness_face;  // a non-sharp face, when present
};

// Runs sharp_cell over every nonempty face of p, including p itself.
TotalSharpnessReport is_totally_sharp(const Polytope& p);

struct UnimodularityReport {
  bool totally_unimodular = false;
  // Offending square submatrix when not: row and column index sets.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

// Exhaustive determinant check over all square submatrices, smallest first.
// Refuses matrices with rows + cols > 14.
UnimodularityReport is_totally_unimodular(const std::vector<std::vector<Int>>& m);

// The region {x >= 0, m.x <= beta}.  Requires m totally unimodular and the
// region bounded; the result is asserted diced before returning.  An
// infeasible system yields an empty optional.
std::optional<Polytope> tu_polytope(const std::vector<std::vector<Int>>& m, const std::vector<Int>& beta);

}  // namespace dicer
