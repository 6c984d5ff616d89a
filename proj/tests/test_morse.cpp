#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "dicer/complex.hpp"
#include "dicer/diced.hpp"
#include "dicer/homology.hpp"
#include "dicer/morse.hpp"
#include "support.hpp"

using namespace dicer;

namespace {

Polytope square_fixture() { return hull({{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}); }

Polytope prism_fixture() {
  return hull({{2, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1},
               {0, 0, 1, 1}});
}

Polytope cube_fixture() {
  return hull({{2, 0, 1, 0}, {2, 0, 0, 1}, {1, 0, 2, 0}, {1, 0, 1, 1}, {1, 1, 1, 0},
               {1, 1, 0, 1}, {0, 1, 2, 0}, {0, 1, 1, 1}});
}

// Reduced homology of a complex through the chains of its face poset.
ReducedHomology complex_homology(const PolyComplex& x, const FieldSpec& field) {
  return reduced_homology(order_complex(view_of(x).facets_of), field);
}

}  // namespace

TEST_CASE("poset views mirror the incidence of the complex") {
  PolyComplex x = grid_subdivision(square_fixture());
  label_by_coordinates(x);
  PosetView whole = view_of(x);
  CHECK(whole.size() == static_cast<int>(x.cells.size()));
  for (int c = 0; c < whole.size(); ++c) {
    CHECK(whole.dims[c] == x.cells[c].dim);
    CHECK(whole.facets_of[c] == x.facets_of[c]);
    CHECK(whole.labels[c] == cell_label(x, c));
  }

  // A subset view renumbers and keeps only internal covers.
  std::vector<int> some = {0, 4, 9};  // vertex, edge above it, triangle above that
  PosetView sub = view_of(x, some);
  CHECK(sub.size() == 3);
  CHECK(sub.facets_of[1] == std::vector<int>{0});
  CHECK(sub.facets_of[2] == std::vector<int>{1});
}

TEST_CASE("acyclicity check finds crossing pairs and rejects malformed input") {
  PosetView pv;
  pv.dims = {1, 1, 2, 2};
  pv.facets_of = {{}, {}, {0, 1}, {0, 1}};

  Matching crossing;
  crossing.pairs = {{0, 2}, {1, 3}};
  auto rep = is_acyclic_matching(pv, crossing);
  CHECK(!rep.acyclic);
  CHECK(rep.cycle.size() == 4);

  Matching fine;
  fine.pairs = {{0, 2}};
  CHECK(is_acyclic_matching(pv, fine).acyclic);

  Matching overlap;
  overlap.pairs = {{0, 2}, {0, 3}};
  CHECK_THROWS_AS(is_acyclic_matching(pv, overlap), std::invalid_argument);

  Matching noncover;
  noncover.pairs = {{2, 3}};
  CHECK_THROWS_AS(is_acyclic_matching(pv, noncover), std::invalid_argument);
}

TEST_CASE("homogeneity requires equal labels on matched pairs") {
  PolyComplex x = grid_subdivision(square_fixture());
  label_by_coordinates(x);
  PosetView v = view_of(x);

  Matching good;
  good.pairs = {{6, 9}};  // interior edge into the top triangle, both x1*x2*x3
  require_homogeneous(v, good);

  Matching bad;
  bad.pairs = {{7, 10}};  // boundary edge, label strictly below the triangle
  CHECK_THROWS_AS(require_homogeneous(v, bad), std::invalid_argument);
}

TEST_CASE("gluing fiber matchings respects the target order") {
  // Two fibers over a two element chain: a vertex-edge pair in each.
  PosetView pv;
  pv.dims = {0, 1, 0, 1};
  pv.facets_of = {{}, {0}, {}, {2}};
  SmallPoset chain{{{1, 1}, {0, 1}}};
  std::vector<int> to_target = {0, 0, 1, 1};
  std::map<int, Matching> fibers;
  fibers[0].pairs = {{0, 1}};
  fibers[1].pairs = {{2, 3}};
  Matching glued = glue_matchings(pv, to_target, chain, fibers, true);
  CHECK(glued.pairs.size() == 2);

  // A pair that leaves its fiber is rejected.
  std::map<int, Matching> escape;
  escape[0].pairs = {{2, 3}};
  CHECK_THROWS_AS(glue_matchings(pv, to_target, chain, escape, true), std::invalid_argument);

  // A non monotone map is rejected: the edge 1 covers vertex 0 but maps
  // below it.
  std::vector<int> bad_map = {1, 0, 1, 1};
  CHECK_THROWS_AS(glue_matchings(pv, bad_map, chain, fibers, true), std::invalid_argument);
}

TEST_CASE("the recursive matching collapses interiors to the witness cell") {
  struct Case {
    Polytope p;
    size_t pairs;
  };
  std::vector<Case> cases = {
      {hull({{0}, {3}}), 2},
      {hull({{0, 0}, {2, 2}}), 1},
      {square_fixture(), 1},
      {prism_fixture(), 1},
      {cube_fixture(), 4},
  };
  for (const auto& c : cases) {
    CAPTURE(to_string(c.p));
    SharpCellMatching lr = sharp_cell_matching(c.p);
    CHECK(lr.matching.pairs.size() == c.pairs);

    // Exactly one critical interior cell, and it is the sharpness witness.
    auto sharp = sharp_cell(c.p);
    REQUIRE(sharp.sigma);
    CHECK(lr.x.cell_polytope(lr.critical) == *sharp.sigma);
    std::vector<int> matched;
    for (auto [lo, hi] : lr.matching.pairs) {
      matched.push_back(lo);
      matched.push_back(hi);
    }
    std::sort(matched.begin(), matched.end());
    CHECK(matched.size() == lr.interior.size() - 1);
    for (int cell : lr.interior)
      if (cell != lr.critical)
        CHECK(std::binary_search(matched.begin(), matched.end(), cell));

    // The pairs are an acyclic homogeneous matching on the interior poset.
    PosetView interior = view_of(lr.x, lr.interior);
    std::map<int, int> local;
    for (size_t i = 0; i < lr.interior.size(); ++i) local[lr.interior[i]] = static_cast<int>(i);
    Matching m;
    for (auto [lo, hi] : lr.matching.pairs) m.pairs.push_back({local[lo], local[hi]});
    CHECK(is_acyclic_matching(interior, m).acyclic);
    require_homogeneous(interior, m);
  }

  CHECK_THROWS_AS(sharp_cell_matching(hull({{2, 0}, {0, 2}})), std::invalid_argument);
}

TEST_CASE("the skew square pairs its interior edge with the top triangle") {
  SharpCellMatching lr = sharp_cell_matching(square_fixture());
  REQUIRE(lr.matching.pairs.size() == 1);
  auto [lo, hi] = lr.matching.pairs[0];
  CHECK(lr.x.cell_polytope(lo) == hull({{1, 0, 1}, {1, 1, 0}}));
  CHECK(lr.x.cell_polytope(hi) == hull({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  CHECK(lr.x.cell_polytope(lr.critical) == hull({{1, 0, 1}, {1, 1, 0}, {2, 0, 0}}));
}

TEST_CASE("subdivision matchings leave one critical cell per input cell") {
  PolyComplex x = make_complex({square_fixture()});
  label_by_coordinates(x);
  SubdivisionMatching sm = subdivision_matching(x);
  CHECK(f_vector(sm.refined) == std::vector<long>{4, 5, 2});
  CHECK(sm.matching.pairs.size() == 1);
  CHECK(sm.critical.size() == x.cells.size());

  // Carriers of critical cells hit every input cell once, preserving
  // dimension and label.
  std::vector<int> carriers = sm.critical_carrier;
  std::sort(carriers.begin(), carriers.end());
  std::vector<int> all(x.cells.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  CHECK(carriers == all);
  for (size_t i = 0; i < sm.critical.size(); ++i) {
    int crit = sm.critical[i];
    int carrier = sm.critical_carrier[i];
    CHECK(sm.refined.cells[crit].dim == x.cells[carrier].dim);
    CHECK(cell_label(sm.refined, crit) == cell_label(x, carrier));
  }

  // Every refined cell's carrier contains it.
  for (size_t c = 0; c < sm.refined.cells.size(); ++c) {
    auto desc = facet_description(x.cell_polytope(sm.carrier[c]));
    for (int v : sm.refined.cells[c].vertex_ids)
      CHECK(polytope_contains(desc, sm.refined.vertices[v]));
  }
}

TEST_CASE("gradient paths between criticals count collapsed incidences") {
  PolyComplex x = make_complex({square_fixture()});
  label_by_coordinates(x);
  SubdivisionMatching sm = subdivision_matching(x);

  // The critical 2-cell has exactly one path to each critical edge.
  int top = -1;
  for (int c : sm.critical)
    if (sm.refined.cells[c].dim == 2) top = c;
  REQUIRE(top >= 0);
  int hits = 0;
  for (int c : sm.critical) {
    if (sm.refined.cells[c].dim != 1) continue;
    auto paths = gradient_paths(sm.refined, sm.matching, top, c);
    CHECK(paths.size() == 1);
    // Paths run from the 2-cell down to the edge.
    CHECK(paths[0].front() == top);
    CHECK(paths[0].back() == c);
    ++hits;
  }
  CHECK(hits == 4);

  // A matched (non-critical) target still enumerates cleanly: the interior
  // edge is reachable only through its own pairing, which is forbidden, so
  // paths can exist only via the other edges.
  CHECK_THROWS_AS(gradient_paths(sm.refined, sm.matching, top, top), std::invalid_argument);
}

TEST_CASE("collapsing reproduces the source complex for trivial subdivisions") {
  for (const Polytope& p : {square_fixture(), prism_fixture(), cube_fixture()}) {
    CAPTURE(to_string(p));
    PolyComplex x = make_complex({p});
    label_by_coordinates(x);
    SubdivisionMatching sm = subdivision_matching(x);
    MorseComplexResult mc = morse_complex(sm.refined, sm.matching, &x);
    CHECK(mc.f == f_vector(x));
    CHECK(mc.cells.size() == x.cells.size());

    // Boundary degrees of the collapsed complex match the source.
    std::vector<size_t> counts(mc.cells.size());
    for (size_t i = 0; i < mc.cells.size(); ++i) counts[i] = mc.boundary[i].size();
    for (size_t i = 0; i < mc.cells.size(); ++i) {
      int carrier = sm.critical_carrier[i];
      CHECK(counts[i] == x.facets_of[carrier].size());
      for (auto [j, paths] : mc.boundary[i]) CHECK(paths == 1);
    }
  }
}

TEST_CASE("an empty matching collapses nothing") {
  PolyComplex x = make_complex({hull({{0, 0}, {1, 0}, {0, 1}})});
  label_by_coordinates(x);
  Matching none;
  MorseComplexResult mc = morse_complex(x, none);
  CHECK(mc.cells.size() == x.cells.size());
  CHECK(mc.f == f_vector(x));
}

TEST_CASE("collapsed complexes keep the homotopy type") {
  FieldSpec q = parse_field("q");
  FieldSpec f2 = parse_field("gf:2");
  for (const Polytope& p : {square_fixture(), prism_fixture()}) {
    PolyComplex x = make_complex({p});
    label_by_coordinates(x);
    SubdivisionMatching sm = subdivision_matching(x);
    MorseComplexResult mc = morse_complex(sm.refined, sm.matching, &x);
    for (const FieldSpec& field : {q, f2}) {
      ReducedHomology before = complex_homology(sm.refined, field);
      ReducedHomology after = reduced_homology(order_complex(mc.facet_lists()), field);
      CHECK(before.trivial());
      CHECK(after.trivial());
    }
  }
}
