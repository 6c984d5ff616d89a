#pragma once

// Exact polytope geometry.
//
// Conventions used throughout:
//  * a Point is a dense rational coordinate vector; points compare
//    lexicographically, and every vertex list in the system is kept sorted
//    and irredundant, so a sorted vertex list is a canonical name for a
//    polytope or a cell;
//  * a Halfspace stores a jointly primitive integer (normal, offset) pair
//    with an explicit sense, so exact membership tests are integer dot
//    products against rational points;
//  * facet_description returns the affine-hull equalities first, then one
//    inequality per facet; within the affine hull their intersection is the
//    polytope, which is the round-trip contract intersect() relies on.

#include <optional>
#include <string>
#include <vector>

#include "dicer/linalg.hpp"
#include "dicer/rational.hpp"

namespace dicer {

using Point = std::vector<Rational>;

std::string to_string(const Point& p);  // "(1/2, 1)"

bool is_lattice_point(const Point& p);

enum class Sense { LE, GE, EQ };

struct Halfspace {
  std::vector<Int> normal;
  Int offset = 0;
  Sense sense = Sense::LE;
};

// Joint primitive reduction of (normal, offset); equalities get a sign
// normalization (first nonzero normal entry positive) so they dedupe.
Halfspace make_halfspace(const Vec& normal, const Rational& offset, Sense sense);

Halfspace grid_hyperplane(int ambient, int coord, const Int& level, Sense sense);

bool satisfies(const Halfspace& h, const Point& x);

std::string to_string(const Halfspace& h);

struct Polytope {
  std::vector<Point> vertices;  // lex sorted, irredundant
  int ambient = 0;

  bool operator==(const Polytope& o) const { return vertices == o.vertices; }
};

// "{(2, 0, 0), (1, 1, 0)}"
std::string to_string(const Polytope& p);

// Affine dimension of the hull of a point set.  Errors on an empty set.
int affine_dim(const std::vector<Point>& points);
int affine_dim(const Polytope& p);

// Irredundant vertex set of the hull of an arbitrary point set.
Polytope convex_hull_vertices(std::vector<Point> points);

std::vector<Halfspace> facet_description(const Polytope& p);

// P cut by additional halfspaces; nullopt when the intersection is empty.
std::optional<Polytope> intersect(const Polytope& p, const std::vector<Halfspace>& cuts);

// All integral points of P, lex sorted (bounding-box scan, exact tests).
// V-representation of {x : all halfspaces hold}.  Returns nothing when the
// region is empty.  Throws std::runtime_error when the region is nonempty
// but unbounded (detected by extreme-ray enumeration of the recession cone),
// or when the constraint normals do not span the ambient space; callers with
// per-coordinate bounds (x >= 0 and the like) always satisfy the span rule.
std::optional<Polytope> polytope_from_halfspaces(int ambient, const std::vector<Halfspace>& hs);

std::vector<Point> lattice_points(const Polytope& p);

// Volume relative to the lattice of the affine hull: a unimodular simplex
// has volume 1, a primitive segment has volume 1, a point has volume 1.
Rational normalized_volume(const Polytope& p);

// All nonempty faces of P including P itself, ordered by (dim, vertex ids).
std::vector<Polytope> enumerate_faces(const Polytope& p);

bool polytope_contains(const std::vector<Halfspace>& description, const Point& x);
bool polytope_contains(const Polytope& p, const Point& x);

// --- tools shared with the complex machinery -------------------------------
//
// These operate on a polytope given as (vertex list, exact halfspace
// description).  The description may contain redundant rows; tight-set
// extraction is still exact.

// Facets as sorted index lists into verts.
std::vector<std::vector<int>> facet_vertex_sets(const std::vector<Point>& verts,
                                                const std::vector<Halfspace>& description);

// Vertex adjacency (edges), exact: two vertices are adjacent iff their
// common tight constraints cut out a line and no third vertex lies on it.
std::vector<std::pair<int, int>> polytope_edges(const std::vector<Point>& verts,
                                                const std::vector<Halfspace>& description);

}  // namespace dicer
