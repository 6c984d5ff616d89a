#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "dicer/complex.hpp"
#include "dicer/diced.hpp"
#include "support.hpp"

using namespace dicer;

namespace {

Polytope square_fixture() { return hull({{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}); }

Polytope prism_fixture() {
  return hull({{2, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1},
               {0, 0, 1, 1}});
}

}  // namespace

TEST_CASE("dicedness detects fractional subdivision vertices") {
  CHECK(is_diced(hull({{2, 0}, {0, 2}})).diced);
  CHECK(is_diced(square_fixture()).diced);
  CHECK(is_diced(prism_fixture()).diced);

  auto rep = is_diced(hull({{0, 0}, {1, 2}}));
  CHECK(!rep.diced);
  REQUIRE(rep.witness);
  CHECK(*rep.witness == Point{Rational(1, 2), Rational(1)});

  // The witness is the lex least fractional vertex of the sliced complex:
  // the cut at x1 = 1 lands at height 2/3.
  auto rep2 = is_diced(hull({{0, 0}, {3, 2}}));
  CHECK(!rep2.diced);
  CHECK(*rep2.witness == Point{Rational(1), Rational(2, 3)});

  // The overload on a prebuilt subdivision agrees.
  PolyComplex x = grid_subdivision(hull({{0, 0}, {1, 2}}));
  CHECK(!is_diced(x).diced);
  CHECK(*is_diced(x).witness == Point{Rational(1, 2), Rational(1)});
}

TEST_CASE("labels are coordinatewise maxima over lattice points") {
  CHECK(polytope_label(hull({{2, 0}, {0, 2}})) == mono({2, 2}));
  CHECK(polytope_label(square_fixture()) == mono({2, 1, 1}));
  CHECK(polytope_label(hull({{1, 1}})) == mono({1, 1}));
  CHECK_THROWS_AS(polytope_label(hull({{0, 0}, {1, 2}})), std::invalid_argument);
}

TEST_CASE("sharpness holds iff the clipped label region is full dimensional") {
  SUBCASE("skew square is sharp with the lower triangle as witness") {
    auto rep = sharp_cell(square_fixture());
    CHECK(rep.is_sharp);
    CHECK(rep.label == mono({2, 1, 1}));
    REQUIRE(rep.sigma);
    CHECK(*rep.sigma == hull({{1, 0, 1}, {1, 1, 0}, {2, 0, 0}}));
    CHECK(rep.region == *rep.sigma);
    // The witness really is a cell of the sliced complex and carries the
    // full label.
    PolyComplex x = grid_subdivision(square_fixture());
    label_by_coordinates(x);
    auto key = cell_index_by_key(x);
    auto it = key.find(rep.sigma->vertices);
    REQUIRE(it != key.end());
    CHECK(cell_label(x, it->second) == rep.label);
  }

  SUBCASE("diagonal segment fails with a point region") {
    auto rep = sharp_cell(hull({{2, 0}, {0, 2}}));
    CHECK(!rep.is_sharp);
    CHECK(rep.label == mono({2, 2}));
    CHECK(rep.region == hull({{1, 1}}));
    CHECK(!rep.sigma);
    CHECK(rep.note == "label region has dimension 0, polytope has dimension 1");
  }

  SUBCASE("doubled triangle fails with an empty region") {
    auto rep = sharp_cell(hull({{0, 0, 2}, {0, 2, 0}, {2, 0, 0}}));
    CHECK(!rep.is_sharp);
    CHECK(rep.label == mono({2, 2, 2}));
    CHECK(rep.region.vertices.empty());
    CHECK(rep.note == "label region is empty, polytope has dimension 2");
  }

  SUBCASE("prism witness is the corner simplex") {
    auto rep = sharp_cell(prism_fixture());
    REQUIRE(rep.is_sharp);
    CHECK(*rep.sigma == hull({{1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}, {2, 0, 0, 0}}));
  }
}

TEST_CASE("total sharpness quantifies over every face") {
  CHECK(is_totally_sharp(square_fixture()).totally_sharp);
  CHECK(is_totally_sharp(prism_fixture()).totally_sharp);
  CHECK(is_totally_sharp(hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).totally_sharp);

  auto rep = is_totally_sharp(hull({{2, 0}, {0, 2}}));
  CHECK(!rep.totally_sharp);
  REQUIRE(rep.witness_face);
  CHECK(*rep.witness_face == hull({{2, 0}, {0, 2}}));  // the segment itself

  // A polytope can be sharp while a face is not: edges of the doubled
  // triangle are diagonal segments.
  Polytope doubled = hull({{0, 0, 2}, {0, 2, 0}, {2, 0, 0}});
  auto rep2 = is_totally_sharp(doubled);
  CHECK(!rep2.totally_sharp);
  REQUIRE(rep2.witness_face);
  CHECK(affine_dim(*rep2.witness_face) == 1);
}

TEST_CASE("zero one cubes are diced and totally sharp") {
  Polytope cube = hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
                        {0, 1, 1}, {1, 1, 1}});
  CHECK(is_diced(cube).diced);
  CHECK(is_totally_sharp(cube).totally_sharp);
  auto rep = sharp_cell(cube);
  CHECK(rep.is_sharp);
  CHECK(*rep.sigma == cube);  // nothing is cut away below the all-ones label
}

TEST_CASE("total unimodularity by exhaustive minors") {
  // Interval matrix: every row a contiguous block of ones.
  CHECK(is_totally_unimodular({{Int(1), Int(1), Int(0)},
                               {Int(0), Int(1), Int(1)},
                               {Int(0), Int(1), Int(0)}})
            .totally_unimodular);

  // The incidence matrix of an odd cycle is the classic failure.
  auto rep = is_totally_unimodular({{Int(1), Int(1), Int(0)},
                                    {Int(0), Int(1), Int(1)},
                                    {Int(1), Int(0), Int(1)}});
  CHECK(!rep.totally_unimodular);
  REQUIRE(rep.witness);
  CHECK(rep.witness->first == std::vector<int>{0, 1, 2});
  CHECK(rep.witness->second == std::vector<int>{0, 1, 2});

  CHECK(is_totally_unimodular({{Int(1)}}).totally_unimodular);
  auto two = is_totally_unimodular({{Int(2)}});
  CHECK(!two.totally_unimodular);
  CHECK(two.witness->first == std::vector<int>{0});

  // Guard against exponential blowup.
  std::vector<std::vector<Int>> big(8, std::vector<Int>(7, Int(0)));
  CHECK_THROWS_AS(is_totally_unimodular(big), std::invalid_argument);
}

TEST_CASE("bounded unimodular systems produce diced polytopes") {
  auto tri = tu_polytope({{Int(1), Int(1)}}, {Int(2)});
  REQUIRE(tri);
  CHECK(*tri == hull({{0, 0}, {2, 0}, {0, 2}}));
  // Unimodularity buys dicedness, not sharpness: this triangle is the
  // doubled one whose label region is empty.
  CHECK(is_diced(*tri).diced);
  CHECK(!is_totally_sharp(*tri).totally_sharp);

  auto point = tu_polytope({{Int(1), Int(0)}, {Int(0), Int(1)}}, {Int(0), Int(0)});
  REQUIRE(point);
  CHECK(point->vertices == std::vector<Point>{pt({0, 0})});

  // x1 <= -1 with x1 >= 0 is infeasible.
  CHECK(!tu_polytope({{Int(1), Int(0)}}, {Int(-1)}));

  // x1 - x2 <= 1 leaves x2 free upward.
  CHECK_THROWS_AS(tu_polytope({{Int(1), Int(-1)}}, {Int(1)}), std::runtime_error);
}
