#include "dicer/minkowski.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "dicer/diced.hpp"

namespace dicer {

namespace {

int infer_ambient(const std::vector<SimplexSpec>& summands) {
  int n = 0;
  for (const auto& s : summands)
    for (int i : s.vertex_indices) n = std::max(n, i);
  return n;
}

void check_spec(const SimplexSpec& s, int ambient) {
  if (s.vertex_indices.empty()) throw std::invalid_argument("summand simplex has no vertices");
  for (size_t k = 0; k < s.vertex_indices.size(); ++k) {
    int i = s.vertex_indices[k];
    if (i < 1 || i > ambient)
      throw std::invalid_argument("basis index out of range: " + std::to_string(i));
    if (k > 0 && i <= s.vertex_indices[k - 1])
      throw std::invalid_argument("summand indices must be strictly increasing");
  }
}

std::string cell_name(size_t idx) { return "cell " + std::to_string(idx + 1); }

}  // namespace

Polytope simplex_polytope(const SimplexSpec& s, int ambient) {
  check_spec(s, ambient);
  std::vector<Point> pts;
  for (int i : s.vertex_indices) {
    Point p(ambient, Rational(0));
    p[i - 1] = Rational(1);
    pts.push_back(std::move(p));
  }
  return convex_hull_vertices(pts);
}

Polytope minkowski_sum(const std::vector<SimplexSpec>& summands, int ambient) {
  if (summands.empty()) throw std::invalid_argument("the sum needs at least one summand");
  if (ambient == 0) ambient = infer_ambient(summands);
  long combos = 1;
  for (const auto& s : summands) {
    check_spec(s, ambient);
    combos *= static_cast<long>(s.vertex_indices.size());
    if (combos > 200000) throw std::runtime_error("too many vertex combinations in the sum");
  }
  std::vector<Point> sums{Point(ambient, Rational(0))};
  for (const auto& s : summands) {
    std::vector<Point> next;
    next.reserve(sums.size() * s.vertex_indices.size());
    for (const auto& base : sums)
      for (int i : s.vertex_indices) {
        Point p = base;
        p[i - 1] += 1;
        next.push_back(std::move(p));
      }
    sums = std::move(next);
  }
  return convex_hull_vertices(sums);
}

MixedCell mixed_cell_polytope(const MixedCellSpec& c, int ambient) {
  if (c.summands.empty()) throw std::invalid_argument("mixed cell has no summands");
  if (ambient == 0) ambient = infer_ambient(c.summands);
  Polytope sum = minkowski_sum(c.summands, ambient);
  int expected = 0;
  for (const auto& b : c.summands) expected += static_cast<int>(b.vertex_indices.size()) - 1;
  int actual = affine_dim(sum);
  if (actual != expected)
    throw std::invalid_argument("not a fine mixed cell: summand dimensions add to " +
                                std::to_string(expected) + " but the sum has dimension " +
                                std::to_string(actual));
  Monomial label{std::vector<long>(ambient, 0)};
  for (const auto& b : c.summands)
    for (int i : b.vertex_indices) ++label.exponents[i - 1];
  if (!(polytope_label(sum) == label))
    throw std::logic_error("mixed cell label disagrees with its lattice points");
  return {std::move(sum), std::move(label)};
}

SubdivisionReport validate_mixed_subdivision(const MixedSubdivision& s) {
  SubdivisionReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (s.summands.empty()) {
    fail("no summand simplices");
    return rep;
  }
  if (s.cells.empty()) {
    fail("no cells");
    return rep;
  }
  int ambient = infer_ambient(s.summands);
  for (const auto& ss : s.summands) check_spec(ss, ambient);

  // structural pass: one face per summand, faces really are faces
  std::vector<MixedCell> cells;
  for (size_t k = 0; k < s.cells.size(); ++k) {
    const auto& c = s.cells[k];
    if (c.summands.size() != s.summands.size()) {
      fail(cell_name(k) + " lists " + std::to_string(c.summands.size()) +
           " summand faces, expected " + std::to_string(s.summands.size()));
      continue;
    }
    for (size_t i = 0; i < c.summands.size(); ++i) {
      check_spec(c.summands[i], ambient);
      if (!std::includes(s.summands[i].vertex_indices.begin(), s.summands[i].vertex_indices.end(),
                         c.summands[i].vertex_indices.begin(), c.summands[i].vertex_indices.end()))
        fail(cell_name(k) + " summand " + std::to_string(i + 1) + " is not a face of its simplex");
    }
    cells.push_back(mixed_cell_polytope(c, ambient));
  }
  if (!rep.ok) return rep;

  Polytope p = minkowski_sum(s.summands, ambient);
  int d = affine_dim(p);

  // containment
  auto desc = facet_description(p);
  for (size_t k = 0; k < cells.size(); ++k)
    for (const auto& v : cells[k].polytope.vertices)
      if (!polytope_contains(desc, v)) {
        fail(cell_name(k) + " leaves the sum: vertex " + to_string(v) + " is outside");
        break;
      }

  // volume additivity, which also needs every cell full dimensional
  bool pure = true;
  for (size_t k = 0; k < cells.size(); ++k) {
    int cd = affine_dim(cells[k].polytope);
    if (cd != d) {
      fail(cell_name(k) + " has dimension " + std::to_string(cd) + ", the sum has dimension " +
           std::to_string(d));
      pure = false;
    }
  }
  if (pure) {
    Rational total(0);
    for (const auto& c : cells) total += normalized_volume(c.polytope);
    Rational vol = normalized_volume(p);
    if (total != vol)
      fail("cell volumes sum to " + to_string(total) + ", the sum has volume " + to_string(vol));
  }

  // pairwise intersections are faces of both cells
  std::vector<std::vector<Halfspace>> descs;
  std::vector<std::set<std::vector<Point>>> face_keys;
  for (const auto& c : cells) {
    descs.push_back(facet_description(c.polytope));
    std::set<std::vector<Point>> keys;
    for (const auto& f : enumerate_faces(c.polytope)) keys.insert(f.vertices);
    face_keys.push_back(std::move(keys));
  }
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j) {
      auto meet = intersect(cells[i].polytope, descs[j]);
      if (!meet) continue;
      for (size_t side : {i, j})
        if (!face_keys[side].count(meet->vertices))
          fail(cell_name(i) + " and " + cell_name(j) + " meet in " + to_string(*meet) +
               ", not a face of " + cell_name(side));
    }

  return rep;
}

SubdivisionReport verify_sharpness_hypotheses(const MixedSubdivision& s) {
  SubdivisionReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  int ambient = infer_ambient(s.summands);
  for (size_t k = 0; k < s.cells.size(); ++k) {
    MixedCell mc = mixed_cell_polytope(s.cells[k], ambient);
    const std::string name = cell_name(k);

    bool all_diced = true;
    for (const auto& f : enumerate_faces(mc.polytope)) {
      auto d = is_diced(f);
      if (!d.diced) {
        fail(name + " has a non-diced face " + to_string(f) + " with subdivision vertex " +
             to_string(*d.witness));
        all_diced = false;
      }
    }
    if (!all_diced) continue;

    auto ts = is_totally_sharp(mc.polytope);
    if (!ts.totally_sharp) {
      fail(name + " is not totally sharp; offending face " + to_string(*ts.witness_face));
      continue;
    }

    long summand_vertices = 0;
    for (const auto& b : s.cells[k].summands)
      summand_vertices += static_cast<long>(b.vertex_indices.size());
    if (mc.label.degree() != summand_vertices)
      fail(name + " label degree " + std::to_string(mc.label.degree()) +
           " does not equal the summand vertex count " + std::to_string(summand_vertices));

    // the full label cell must be the unit simplex sitting one step below
    // the label in every coordinate the label touches
    Point corner(ambient, Rational(0));
    for (int i = 0; i < ambient; ++i)
      if (mc.label.exponents[i] > 0) corner[i] = Rational(mc.label.exponents[i] - 1);
    std::vector<Point> predicted;
    for (int i = 0; i < ambient; ++i)
      if (mc.label.exponents[i] > 0) {
        Point v = corner;
        v[i] += 1;
        predicted.push_back(std::move(v));
      }
    Polytope simplex = convex_hull_vertices(predicted);
    auto sh = sharp_cell(mc.polytope);
    if (!sh.sigma || !(*sh.sigma == simplex))
      fail(name + ": the full label cell is not the unit simplex predicted by the label");
    auto keys = cell_index_by_key(grid_subdivision(mc.polytope));
    if (!keys.count(simplex.vertices))
      fail(name + ": the predicted simplex is not a cell of the sliced complex");

    long deg = mc.label.degree();
    int d = affine_dim(mc.polytope);
    for (const auto& f : enumerate_faces(mc.polytope)) {
      if (affine_dim(f) != d - 1) continue;
      long fdeg = polytope_label(f).degree();
      if (fdeg >= deg)
        fail(name + " facet " + to_string(f) + " has label degree " + std::to_string(fdeg) +
             ", not below " + std::to_string(deg));
    }
  }
  return rep;
}

MixedResolutionReport resolve_mixed_subdivision(const MixedSubdivision& s, const FieldSpec& field) {
  auto valid = validate_mixed_subdivision(s);
  if (!valid.ok)
    throw std::invalid_argument("mixed subdivision is invalid: " + valid.violations.front());
  auto hyp = verify_sharpness_hypotheses(s);
  if (!hyp.ok)
    throw std::invalid_argument("mixed subdivision fails the sharpness hypotheses: " +
                                hyp.violations.front());

  int ambient = infer_ambient(s.summands);
  std::vector<Polytope> generators;
  for (const auto& c : s.cells) generators.push_back(mixed_cell_polytope(c, ambient).polytope);

  MixedResolutionReport rep;
  rep.complex = make_complex(generators, /*validate=*/true);
  label_by_coordinates(rep.complex);

  MonomialIdeal ideal = ideal_of_polytope(minkowski_sum(s.summands, ambient));
  auto check = verify_cellular_resolution(rep.complex, ideal, field);
  rep.resolves = check.resolves;
  rep.failures = std::move(check.failures);
  auto min = is_minimal(rep.complex);
  rep.minimal = min.minimal;
  rep.equal_label_pairs = std::move(min.witnesses);
  rep.oracle = koszul_betti_oracle(ideal, field);
  if (rep.minimal) {
    rep.betti = betti_table(rep.complex);
    rep.oracle_agrees = (rep.betti == rep.oracle);
  }
  return rep;
}

namespace {

Polytope lattice_hull(std::vector<std::vector<long>> coords) {
  std::vector<Point> pts;
  for (const auto& c : coords) {
    Point p;
    for (long x : c) p.push_back(Rational(x));
    pts.push_back(std::move(p));
  }
  return convex_hull_vertices(pts);
}

MixedSubdivision one_cell(std::vector<SimplexSpec> summands) {
  MixedSubdivision s;
  s.cells = {MixedCellSpec{summands}};
  s.summands = std::move(summands);
  return s;
}

}  // namespace

const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> fs;
    {
      Fixture f;
      f.name = "square";
      f.polytope = lattice_hull({{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
      f.mixed = one_cell({SimplexSpec{{1, 2}}, SimplexSpec{{1, 3}}});
      f.grid_f_vector = {4, 5, 2};
      f.resolution_totals = {4, 4, 1};
      fs.push_back(std::move(f));
    }
    {
      Fixture f;
      f.name = "diced-line";
      f.polytope = lattice_hull({{2, 0}, {0, 2}});
      f.sharp = false;
      f.totally_sharp = false;
      f.grid_f_vector = {3, 2};
      f.resolution_totals = {3, 2};
      fs.push_back(std::move(f));
    }
    {
      Fixture f;
      f.name = "nondiced-line";
      f.polytope = lattice_hull({{0, 0}, {1, 2}});
      f.diced = false;
      f.sharp = false;
      f.totally_sharp = false;
      f.grid_f_vector = {3, 2};
      fs.push_back(std::move(f));
    }
    {
      Fixture f;
      f.name = "simplex";
      f.polytope = lattice_hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
      f.mixed = one_cell({SimplexSpec{{1, 2, 3}}});
      f.grid_f_vector = {3, 3, 1};
      f.resolution_totals = {3, 3, 1};
      fs.push_back(std::move(f));
    }
    {
      Fixture f;
      f.name = "prism";
      f.mixed = one_cell({SimplexSpec{{1, 2, 3}}, SimplexSpec{{1, 4}}});
      f.polytope = minkowski_sum(f.mixed->summands);
      f.grid_f_vector = {6, 11, 8, 2};
      f.resolution_totals = {6, 9, 5, 1};
      fs.push_back(std::move(f));
    }
    {
      Fixture f;
      f.name = "cube";
      f.mixed = one_cell({SimplexSpec{{1, 2}}, SimplexSpec{{1, 3}}, SimplexSpec{{3, 4}}});
      f.polytope = minkowski_sum(f.mixed->summands);
      f.grid_f_vector = {8, 17, 14, 4};
      f.resolution_totals = {8, 12, 6, 1};
      fs.push_back(std::move(f));
    }
    {
      Fixture f;
      f.name = "staircase";
      MixedSubdivision s;
      s.summands = {SimplexSpec{{1, 2, 3}}, SimplexSpec{{1, 2, 3}}};
      s.cells = {MixedCellSpec{{SimplexSpec{{1, 2, 3}}, SimplexSpec{{3}}}},
                 MixedCellSpec{{SimplexSpec{{1, 2}}, SimplexSpec{{2, 3}}}},
                 MixedCellSpec{{SimplexSpec{{1}}, SimplexSpec{{1, 2, 3}}}}};
      f.polytope = minkowski_sum(s.summands);
      f.mixed = std::move(s);
      f.sharp = false;
      f.totally_sharp = false;
      f.grid_f_vector = {6, 9, 4};
      f.resolution_totals = {6, 8, 3};
      fs.push_back(std::move(f));
    }
    return fs;
  }();
  return fixtures;
}

const Fixture* fixture_named(const std::string& name) {
  for (const auto& f : builtin_fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace dicer
