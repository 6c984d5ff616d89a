#pragma once

// Polyhedral cell complexes with monomial vertex labels.
//
// A complex stores one global vertex table (lex sorted lattice-or-rational
// points) and every cell of every dimension as a sorted list of vertex ids.
// Cells are convex polytopes; a cell is identified by its vertex set, and
// face relations are vertex-set containment.  Cells are sorted by dimension
// and then by vertex ids, so indices are deterministic for a given input.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dicer/geometry.hpp"
#include "dicer/monomial.hpp"

namespace dicer {

struct Cell {
  std::vector<int> vertex_ids;  // sorted indices into PolyComplex::vertices
  int dim = 0;
};

struct PolyComplex {
  int ambient = 0;
  std::vector<Point> vertices;
  std::vector<Cell> cells;                   // all faces, every dimension
  std::vector<std::vector<int>> facets_of;   // codim-1 faces, per cell
  std::vector<std::vector<int>> cofacets_of; // codim-1 cofaces, per cell
  std::vector<Monomial> vertex_labels;       // empty when unlabeled

  int dim() const;
  Polytope cell_polytope(int c) const;
  bool labeled() const { return !vertex_labels.empty(); }
};

// Assembles the complex generated by the given cells: the cells themselves
// plus all their faces, glued along shared vertices.  With validate set,
// checks that every pairwise intersection of the generating cells is a face
// of both and throws std::invalid_argument otherwise.
PolyComplex make_complex(const std::vector<Polytope>& generating_cells, bool validate = false);

// Common refinement of a polytope with all integer coordinate hyperplanes
// that meet its interior.  The result is unlabeled; see label_by_coordinates.
PolyComplex grid_subdivision(const Polytope& p);

// Labels every vertex by its own coordinates.  Requires lattice vertices.
void label_by_coordinates(PolyComplex& x);

// lcm of the labels of the cell's vertices.
Monomial cell_label(const PolyComplex& x, int c);
std::vector<Monomial> cell_labels(const PolyComplex& x);

// Monomial position of a cell inside the unit grid: the coordinatewise
// ceiling corner of the half-open unit box (c-1, c] the cell lives in.
// Requires the cell to span at most one unit in every coordinate and the
// upper corner to be integral.
Monomial half_open_box_corner(const Polytope& cell);

// Cells of x not contained in the boundary of p, ascending cell ids.
std::vector<int> interior_cells(const PolyComplex& x, const Polytope& p);

// Cells whose label divides m, ascending cell ids.  Requires labels.
std::vector<int> restriction_cells(const PolyComplex& x, const Monomial& m);

// Number of cells in each dimension, index = dimension.
std::vector<long> f_vector(const PolyComplex& x);

// Lookup table from sorted vertex point lists to cell ids, for matching
// cells across complexes that share geometry.
using CellKey = std::vector<Point>;
CellKey cell_key(const PolyComplex& x, int c);
std::map<CellKey, int> cell_index_by_key(const PolyComplex& x);

std::string describe_cell(const PolyComplex& x, int c);

}  // namespace dicer
