#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dicer/complex.hpp"
#include "dicer/geometry.hpp"
#include "dicer/monomial.hpp"

namespace dicer {

// A face poset fragment: elements 0..size()-1 with dimensions, covering
// relations (facets_of[c] lists the elements covered by c) and, when
// available, monomial labels.
struct PosetView {
  std::vector<int> dims;
  std::vector<std::vector<int>> facets_of;
  std::vector<Monomial> labels;  // empty when unlabeled

  int size() const { return static_cast<int>(dims.size()); }
};

// View of a whole complex; element ids coincide with cell ids.
PosetView view_of(const PolyComplex& x);

// View of a subset of cells, up-closed or not; element i corresponds to
// cells[i] and only covering relations inside the subset are kept.
PosetView view_of(const PolyComplex& x, const std::vector<int>& cells);

struct Matching {
  // (lower, upper) element pairs, each a covering relation of the scope.
  std::vector<std::pair<int, int>> pairs;
  std::string scope;  // human readable description of the poset matched over
};

struct AcyclicityReport {
  bool acyclic = true;
  // When cyclic: a directed cycle in the modified Hasse digraph, as element
  // ids in traversal order.
  std::vector<int> cycle;
};

// Checks that the pairs are disjoint covering relations and that reversing
// them leaves the Hasse digraph acyclic. Malformed matchings throw.
AcyclicityReport is_acyclic_matching(const PosetView& view, const Matching& m);

// Throws unless every pair joins two cells with equal labels.
void require_homogeneous(const PosetView& view, const Matching& m);

// Tiny explicit poset, as a reflexive-transitive leq matrix.
struct SmallPoset {
  std::vector<std::vector<char>> leq;  // leq[a][b] != 0 iff a <= b
  int size() const { return static_cast<int>(leq.size()); }
};

// Union of per-fiber matchings along an order preserving map into `target`.
// Each fiber matching must stay inside its fiber; a non-monotone map throws.
// With reverify set the union is checked by is_acyclic_matching.
Matching glue_matchings(const PosetView& scope, const std::vector<int>& to_target,
                        const SmallPoset& target,
                        const std::map<int, Matching>& fiber_matchings,
                        bool reverify = true);

// Recursive matching on the interior cells of the sliced complex of a sharp
// polytope, leaving only the label-carrying cell critical.
struct SharpCellMatching {
  PolyComplex x;              // sliced complex of the input, coordinate labeled
  std::vector<int> interior;  // interior cell ids of x, ascending
  Matching matching;          // pairs of x cell ids, all interior
  int critical = -1;          // x cell id of the label-carrying cell
};

SharpCellMatching sharp_cell_matching(const Polytope& p, bool reverify = true);

// Matching on the common refinement of a subdivision into totally sharp
// cells; critical cells biject with the cells of the input complex.
struct SubdivisionMatching {
  PolyComplex refined;                // the fully sliced complex, labeled
  Matching matching;                  // pairs of refined cell ids
  std::vector<int> carrier;           // refined cell id -> smallest x cell containing it
  std::vector<int> critical;          // unmatched refined cell ids, ascending
  std::vector<int> critical_carrier;  // x cell id per critical, same order
};

SubdivisionMatching subdivision_matching(const PolyComplex& x, bool reverify = true);

// A directed path in the modified Hasse digraph, from tau down to sigma.
using GradientPath = std::vector<int>;

// All directed paths between two critical cells after reversing the matched
// edges. For dim sigma = dim tau - 1 a nonempty list means sigma is a facet
// of tau in the collapsed complex.
std::vector<GradientPath> gradient_paths(const PolyComplex& xprime, const Matching& m,
                                         int tau, int sigma);

struct MorseCell {
  int cell = -1;  // refined cell id
  int dim = 0;
  Monomial label;
};

struct MorseComplexResult {
  std::vector<MorseCell> cells;  // ascending by refined cell id
  // boundary[i] lists (index into cells, gradient path count) for the
  // codimension one cells under cells[i] reachable by at least one path.
  std::vector<std::vector<std::pair<int, long>>> boundary;
  std::vector<long> f;  // cell counts per dimension

  // Covering lists in local indices, usable as a poset view.
  std::vector<std::vector<int>> facet_lists() const;
};

// Collapses the matched pairs of xprime. When a reference complex is given,
// checks that the critical cells biject with its cells preserving dimension,
// label and the facet relation, with one gradient path per facet pair.
MorseComplexResult morse_complex(const PolyComplex& xprime, const Matching& m,
                                 const PolyComplex* reference = nullptr);

}  // namespace dicer
