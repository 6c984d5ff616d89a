#include "dicer/morse.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dicer/diced.hpp"

namespace dicer {

namespace {

std::string pair_text(int a, int b) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ")";
  return os.str();
}

// Modified Hasse digraph: every covering edge points down, matched edges up.
std::vector<std::vector<int>> modified_digraph(const PosetView& view,
                                               const std::vector<int>& partner) {
  std::vector<std::vector<int>> out(view.size());
  for (int c = 0; c < view.size(); ++c) {
    for (int f : view.facets_of[c]) {
      if (partner[f] == c) {
        out[f].push_back(c);
      } else {
        out[c].push_back(f);
      }
    }
  }
  for (auto& row : out) std::sort(row.begin(), row.end());
  return out;
}

// partner[c] = matched cell or -1; throws on malformed pairs.
std::vector<int> partner_table(const PosetView& view, const Matching& m) {
  std::vector<int> partner(view.size(), -1);
  for (const auto& [lo, hi] : m.pairs) {
    if (lo < 0 || hi < 0 || lo >= view.size() || hi >= view.size()) {
      throw std::invalid_argument("matched pair " + pair_text(lo, hi) + " is out of range");
    }
    const auto& fs = view.facets_of[hi];
    if (std::find(fs.begin(), fs.end(), lo) == fs.end()) {
      throw std::invalid_argument("matched pair " + pair_text(lo, hi) +
                                  " is not a covering relation");
    }
    if (partner[lo] != -1 || partner[hi] != -1) {
      throw std::invalid_argument("cell in matched pair " + pair_text(lo, hi) +
                                  " is already matched");
    }
    partner[lo] = hi;
    partner[hi] = lo;
  }
  return partner;
}

}  // namespace

PosetView view_of(const PolyComplex& x) {
  PosetView v;
  v.dims.reserve(x.cells.size());
  for (const auto& c : x.cells) v.dims.push_back(c.dim);
  v.facets_of = x.facets_of;
  if (x.labeled()) v.labels = cell_labels(x);
  return v;
}

PosetView view_of(const PolyComplex& x, const std::vector<int>& cells) {
  std::map<int, int> local;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) local[cells[i]] = i;
  PosetView v;
  v.dims.reserve(cells.size());
  std::vector<Monomial> all_labels;
  if (x.labeled()) all_labels = cell_labels(x);
  for (int id : cells) {
    v.dims.push_back(x.cells[id].dim);
    std::vector<int> fs;
    for (int f : x.facets_of[id]) {
      auto it = local.find(f);
      if (it != local.end()) fs.push_back(it->second);
    }
    std::sort(fs.begin(), fs.end());
    v.facets_of.push_back(std::move(fs));
    if (x.labeled()) v.labels.push_back(all_labels[id]);
  }
  return v;
}

AcyclicityReport is_acyclic_matching(const PosetView& view, const Matching& m) {
  const auto partner = partner_table(view, m);
  const auto out = modified_digraph(view, partner);
  const int n = view.size();

  // Iterative three color DFS; a back edge to a gray node closes a cycle.
  std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
  std::vector<int> path;
  std::vector<std::pair<int, size_t>> stack;
  for (int start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    stack.push_back({start, 0});
    color[start] = 1;
    path.push_back(start);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < out[v].size()) {
        int w = out[v][next++];
        if (color[w] == 1) {
          AcyclicityReport rep;
          rep.acyclic = false;
          auto it = std::find(path.begin(), path.end(), w);
          rep.cycle.assign(it, path.end());
          return rep;
        }
        if (color[w] == 0) {
          color[w] = 1;
          path.push_back(w);
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return {};
}

void require_homogeneous(const PosetView& view, const Matching& m) {
  if (view.labels.empty()) {
    throw std::invalid_argument("homogeneity check needs a labeled poset");
  }
  for (const auto& [lo, hi] : m.pairs) {
    if (lo < 0 || hi < 0 || lo >= view.size() || hi >= view.size()) {
      throw std::invalid_argument("matched pair " + pair_text(lo, hi) + " is out of range");
    }
    if (!(view.labels[lo] == view.labels[hi])) {
      throw std::invalid_argument("matched pair " + pair_text(lo, hi) +
                                  " joins cells with labels " + to_string(view.labels[lo]) +
                                  " and " + to_string(view.labels[hi]));
    }
  }
}

Matching glue_matchings(const PosetView& scope, const std::vector<int>& to_target,
                        const SmallPoset& target,
                        const std::map<int, Matching>& fiber_matchings, bool reverify) {
  if (static_cast<int>(to_target.size()) != scope.size()) {
    throw std::invalid_argument("poset map does not cover the scope");
  }
  for (int v : to_target) {
    if (v < 0 || v >= target.size()) {
      throw std::invalid_argument("poset map value out of range");
    }
  }
  for (int c = 0; c < scope.size(); ++c) {
    for (int f : scope.facets_of[c]) {
      if (!target.leq[to_target[f]][to_target[c]]) {
        throw std::invalid_argument("poset map is not order preserving on the covering pair " +
                                    pair_text(f, c));
      }
    }
  }
  Matching glued;
  glued.scope = "glued";
  for (const auto& [q, mq] : fiber_matchings) {
    if (q < 0 || q >= target.size()) {
      throw std::invalid_argument("fiber matching attached to an element outside the target");
    }
    for (const auto& [lo, hi] : mq.pairs) {
      if (lo < 0 || hi < 0 || lo >= scope.size() || hi >= scope.size()) {
        throw std::invalid_argument("fiber pair " + pair_text(lo, hi) + " is out of range");
      }
      if (to_target[lo] != q || to_target[hi] != q) {
        throw std::invalid_argument("fiber pair " + pair_text(lo, hi) + " leaves its fiber");
      }
      glued.pairs.push_back({lo, hi});
    }
  }
  std::sort(glued.pairs.begin(), glued.pairs.end());
  if (reverify) {
    auto rep = is_acyclic_matching(scope, glued);
    if (!rep.acyclic) throw std::logic_error("glued matching is cyclic");
  }
  return glued;
}

namespace {

// Recursion payload: pairs and the critical cell as geometric keys, so they
// lift unchanged from the complexes of split pieces into the parent complex.
struct KeyMatching {
  std::vector<std::pair<CellKey, CellKey>> pairs;
  CellKey critical;
  std::set<CellKey> interior;
};

Matching to_local(const std::vector<std::pair<CellKey, CellKey>>& pairs,
                  const std::map<CellKey, int>& index, const std::map<int, int>& local,
                  const std::string& scope) {
  Matching m;
  m.scope = scope;
  for (const auto& [lo, hi] : pairs) {
    auto li = index.find(lo);
    auto hi_it = index.find(hi);
    if (li == index.end() || hi_it == index.end()) {
      throw std::logic_error("matched cell is missing from the sliced complex");
    }
    auto ll = local.find(li->second);
    auto hl = local.find(hi_it->second);
    if (ll == local.end() || hl == local.end()) {
      throw std::logic_error("matched cell is not interior");
    }
    m.pairs.push_back({ll->second, hl->second});
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

// Verifies a finished level: pairs acyclic, homogeneous, and exactly the
// label carrying cell left unmatched.
void check_level(const PolyComplex& x, const std::vector<int>& interior,
                 const KeyMatching& km) {
  auto index = cell_index_by_key(x);
  std::map<int, int> local;
  for (int i = 0; i < static_cast<int>(interior.size()); ++i) local[interior[i]] = i;
  PosetView scope = view_of(x, interior);
  Matching m = to_local(km.pairs, index, local, "interior cells");
  auto rep = is_acyclic_matching(scope, m);
  if (!rep.acyclic) throw std::logic_error("interior matching is cyclic");
  require_homogeneous(scope, m);
  std::vector<char> matched(scope.size(), 0);
  for (const auto& [lo, hi] : m.pairs) matched[lo] = matched[hi] = 1;
  auto crit = index.find(km.critical);
  if (crit == index.end() || !local.count(crit->second)) {
    throw std::logic_error("label cell is missing from the interior");
  }
  for (int i = 0; i < scope.size(); ++i) {
    bool is_crit = interior[i] == crit->second;
    if (matched[i] == is_crit) {
      throw std::logic_error("matching does not leave exactly the label cell critical");
    }
  }
}

KeyMatching build_matching(const Polytope& p, bool reverify, int depth) {
  if (depth > 128) throw std::logic_error("matching recursion exceeded the depth limit");
  auto sharp = sharp_cell(p);
  if (!sharp.is_sharp) {
    throw std::logic_error("splitting produced a piece without a full label cell; " + sharp.note);
  }
  PolyComplex x = grid_subdivision(p);
  label_by_coordinates(x);
  const std::vector<int> interior = interior_cells(x, p);
  auto index = cell_index_by_key(x);

  KeyMatching out;
  out.critical = sharp.sigma->vertices;
  for (int id : interior) out.interior.insert(cell_key(x, id));

  const int d = affine_dim(p);
  if (interior.size() == 1) {
    // Trivial slicing: the polytope itself is the only interior cell and
    // must carry its own label.
    if (!out.interior.count(out.critical)) {
      throw std::logic_error("trivial slicing does not carry the label cell");
    }
    if (reverify) check_level(x, interior, out);
    return out;
  }

  if (d == 1) {
    // Segment: vertices in lex order follow the line. Sharpness forces the
    // direction to be coordinatewise nondecreasing, so the label sits on the
    // last cell; every other cell is matched to its endpoint nearer to it.
    const auto& vs = x.vertices;
    const int cells = static_cast<int>(vs.size()) - 1;
    for (int k = 0; k < cells; ++k) {
      for (int i = 0; i < p.ambient; ++i) {
        if (vs[k + 1][i] < vs[k][i]) {
          throw std::logic_error("sharp segment is not coordinatewise monotone");
        }
      }
    }
    if (out.critical != CellKey{vs[cells - 1], vs[cells]}) {
      throw std::logic_error("segment label cell is not the far end cell");
    }
    for (int k = 1; k < cells; ++k) {
      out.pairs.push_back({CellKey{vs[k]}, CellKey{vs[k - 1], vs[k]}});
    }
    if (reverify) check_level(x, interior, out);
    return out;
  }

  // General step: find the first full dimensional interior cell sharing a
  // facet with the label cell, then split along the integer hyperplanes
  // through that shared facet.
  auto sigma_it = index.find(out.critical);
  if (sigma_it == index.end()) throw std::logic_error("label cell is not a cell of the slicing");
  const int sigma_id = sigma_it->second;
  auto sigma_desc = facet_description(*sharp.sigma);

  int tau_id = -1;
  std::optional<Polytope> omega;
  for (int id : interior) {
    if (x.cells[id].dim != d || id == sigma_id) continue;
    auto meet = intersect(x.cell_polytope(id), sigma_desc);
    if (!meet || affine_dim(*meet) != d - 1) continue;
    tau_id = id;
    omega = *meet;
    break;
  }
  if (tau_id < 0) throw std::logic_error("no full dimensional cell neighbors the label cell");
  auto omega_it = index.find(omega->vertices);
  if (omega_it == index.end()) throw std::logic_error("shared facet is not a cell of the slicing");
  const int omega_id = omega_it->second;
  for (int upper : {sigma_id, tau_id}) {
    const auto& fs = x.facets_of[upper];
    if (std::find(fs.begin(), fs.end(), omega_id) == fs.end()) {
      throw std::logic_error("shared face is not a facet of both neighbors");
    }
  }

  // Integer coordinate hyperplanes through the shared facet but not through
  // the whole polytope; each must sit one unit below the label.
  const Monomial label = polytope_label(p);
  std::vector<std::pair<int, Int>> levels;
  for (int i = 0; i < p.ambient; ++i) {
    Rational lo = omega->vertices.front()[i], hi = lo;
    for (const auto& v : omega->vertices) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    if (lo != hi) continue;
    Rational plo = p.vertices.front()[i], phi = plo;
    for (const auto& v : p.vertices) {
      plo = std::min(plo, v[i]);
      phi = std::max(phi, v[i]);
    }
    if (plo == phi) continue;  // the whole polytope is flat in this coordinate
    if (!is_integer(lo)) throw std::logic_error("splitting level is not an integer");
    Int level = numerator(lo);
    if (level != Int(label.exponents[i]) - 1) {
      throw std::logic_error("splitting level is not one unit below the label");
    }
    levels.push_back({i, level});
  }
  if (levels.empty()) throw std::logic_error("shared facet lies in no coordinate hyperplane");

  std::vector<Halfspace> ge, le, eq;
  for (const auto& [i, level] : levels) {
    ge.push_back(grid_hyperplane(p.ambient, i, level, Sense::GE));
    le.push_back(grid_hyperplane(p.ambient, i, level, Sense::LE));
    eq.push_back(grid_hyperplane(p.ambient, i, level, Sense::EQ));
  }
  auto p_ge = intersect(p, ge);
  auto p_le = intersect(p, le);
  auto p_eq = intersect(p, eq);
  if (!p_ge || !p_le || !p_eq) throw std::logic_error("splitting produced an empty piece");
  if (affine_dim(*p_ge) != d || affine_dim(*p_le) != d || affine_dim(*p_eq) != d - 1) {
    throw std::logic_error("splitting produced pieces of unexpected dimension");
  }

  auto rec_ge = build_matching(*p_ge, reverify, depth + 1);
  auto rec_le = build_matching(*p_le, reverify, depth + 1);
  auto rec_eq = build_matching(*p_eq, reverify, depth + 1);

  // The label cells of the pieces are forced: the label cell itself, the
  // chosen neighbor, and the shared facet.
  if (rec_ge.critical != out.critical) {
    throw std::logic_error("upper piece does not keep the label cell");
  }
  if (rec_le.critical != cell_key(x, tau_id)) {
    throw std::logic_error("lower piece label cell is not the chosen neighbor");
  }
  if (rec_eq.critical != omega->vertices) {
    throw std::logic_error("wall piece label cell is not the shared facet");
  }

  // Label bookkeeping: the neighbor and the shared facet drop exactly the
  // splitting coordinates by one.
  Monomial expect = label;
  for (const auto& [i, level] : levels) expect.exponents[i] -= 1;
  if (!(cell_label(x, tau_id) == expect) || !(cell_label(x, omega_id) == expect)) {
    throw std::logic_error("labels across the split do not drop by the splitting coordinates");
  }

  // The interior cells must fall into the three pieces exactly.
  std::set<CellKey> bucket_ge, bucket_le, bucket_eq;
  std::vector<int> to_target(interior.size(), -1);
  for (size_t k = 0; k < interior.size(); ++k) {
    int id = interior[k];
    bool all_eq = true, all_ge = true, all_le = true;
    for (int vid : x.cells[id].vertex_ids) {
      for (const auto& [i, level] : levels) {
        const Rational& c = x.vertices[vid][i];
        if (c != Rational(level)) all_eq = false;
        if (c < Rational(level)) all_ge = false;
        if (c > Rational(level)) all_le = false;
      }
    }
    if (all_eq) {
      bucket_eq.insert(cell_key(x, id));
      to_target[k] = 0;
    } else if (all_ge) {
      bucket_ge.insert(cell_key(x, id));
      to_target[k] = 1;
    } else if (all_le) {
      bucket_le.insert(cell_key(x, id));
      to_target[k] = 2;
    } else {
      throw std::logic_error("interior cell straddles the split");
    }
  }
  if (bucket_ge != rec_ge.interior || bucket_le != rec_le.interior ||
      bucket_eq != rec_eq.interior) {
    throw std::logic_error("interior cells do not partition across the split");
  }

  // Glue the three fiber matchings along the containment order of the
  // pieces, then match the shared facet with the neighbor.
  std::map<int, int> local;
  for (size_t k = 0; k < interior.size(); ++k) local[interior[k]] = static_cast<int>(k);
  PosetView scope = view_of(x, interior);
  SmallPoset target;
  target.leq = {{1, 1, 1}, {0, 1, 0}, {0, 0, 1}};
  std::map<int, Matching> fibers;
  fibers[0] = to_local(rec_eq.pairs, index, local, "wall piece");
  fibers[1] = to_local(rec_ge.pairs, index, local, "upper piece");
  fibers[2] = to_local(rec_le.pairs, index, local, "lower piece");
  Matching glued = glue_matchings(scope, to_target, target, fibers, reverify);
  glued.pairs.push_back({local.at(omega_id), local.at(tau_id)});
  if (reverify) {
    auto rep = is_acyclic_matching(scope, glued);
    if (!rep.acyclic) {
      throw std::logic_error("matching became cyclic after pairing the shared facet");
    }
    require_homogeneous(scope, glued);
  }

  out.pairs = std::move(rec_ge.pairs);
  out.pairs.insert(out.pairs.end(), rec_le.pairs.begin(), rec_le.pairs.end());
  out.pairs.insert(out.pairs.end(), rec_eq.pairs.begin(), rec_eq.pairs.end());
  out.pairs.push_back({omega->vertices, cell_key(x, tau_id)});
  if (reverify) check_level(x, interior, out);
  return out;
}

}  // namespace

SharpCellMatching sharp_cell_matching(const Polytope& p, bool reverify) {
  auto sharp = sharp_cell(p);
  if (!sharp.is_sharp) {
    throw std::invalid_argument("polytope is not sharp; " + sharp.note);
  }
  KeyMatching km = build_matching(p, reverify, 0);

  SharpCellMatching res;
  res.x = grid_subdivision(p);
  label_by_coordinates(res.x);
  res.interior = interior_cells(res.x, p);
  auto index = cell_index_by_key(res.x);
  res.matching.scope = "interior cells of the sliced polytope";
  for (const auto& [lo, hi] : km.pairs) {
    res.matching.pairs.push_back({index.at(lo), index.at(hi)});
  }
  std::sort(res.matching.pairs.begin(), res.matching.pairs.end());
  res.critical = index.at(km.critical);

  // Always verified, independent of the recursion's own checks.
  check_level(res.x, res.interior, km);
  return res;
}

namespace {

// Smallest cell of coarse containing every given point; throws when the
// containment structure is not what a subdivision guarantees.
std::vector<int> carrier_map(const PolyComplex& fine, const PolyComplex& coarse) {
  std::vector<std::vector<Halfspace>> descs(coarse.cells.size());
  for (size_t i = 0; i < coarse.cells.size(); ++i) {
    descs[i] = facet_description(coarse.cell_polytope(static_cast<int>(i)));
  }
  std::vector<int> carrier(fine.cells.size(), -1);
  for (size_t c = 0; c < fine.cells.size(); ++c) {
    int found = -1;
    for (size_t s = 0; s < coarse.cells.size(); ++s) {  // ascending dim order
      bool inside = true;
      for (int vid : fine.cells[c].vertex_ids) {
        if (!polytope_contains(descs[s], fine.vertices[vid])) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      if (found >= 0 && coarse.cells[s].dim == coarse.cells[found].dim) {
        throw std::logic_error("refined cell has two smallest carriers");
      }
      if (found < 0) found = static_cast<int>(s);
    }
    if (found < 0) {
      throw std::logic_error("refined cell " + describe_cell(fine, static_cast<int>(c)) +
                             " lies in no cell of the reference complex");
    }
    carrier[c] = found;
  }
  return carrier;
}

}  // namespace

SubdivisionMatching subdivision_matching(const PolyComplex& x, bool reverify) {
  if (x.cells.empty()) throw std::invalid_argument("cannot match an empty complex");
  Polytope p = convex_hull_vertices(x.vertices);
  p.ambient = x.ambient;
  const int d = affine_dim(p);

  std::vector<int> maximal;
  for (size_t i = 0; i < x.cells.size(); ++i) {
    if (x.cofacets_of[i].empty()) maximal.push_back(static_cast<int>(i));
  }
  auto pdesc = facet_description(p);
  Rational covered = 0;
  for (int id : maximal) {
    if (x.cells[id].dim != d) {
      throw std::invalid_argument("maximal " + describe_cell(x, id) +
                                  " does not have the full dimension " + std::to_string(d));
    }
    for (int vid : x.cells[id].vertex_ids) {
      if (!polytope_contains(pdesc, x.vertices[vid])) {
        throw std::invalid_argument(describe_cell(x, id) +
                                    " leaves the underlying polytope");
      }
    }
    covered += normalized_volume(x.cell_polytope(id));
  }
  if (covered != normalized_volume(p)) {
    throw std::invalid_argument("cells do not fill the underlying polytope");
  }
  for (int id : maximal) {
    auto rep = is_totally_sharp(x.cell_polytope(id));
    if (!rep.totally_sharp) {
      throw std::invalid_argument(describe_cell(x, id) +
                                  " is not totally sharp; offending face " +
                                  to_string(*rep.witness_face));
    }
  }

  // Common refinement: slice every maximal cell by the integer grid.
  std::vector<Polytope> pieces;
  for (int id : maximal) {
    PolyComplex g = grid_subdivision(x.cell_polytope(id));
    for (size_t c = 0; c < g.cells.size(); ++c) {
      if (g.cells[c].dim == d) pieces.push_back(g.cell_polytope(static_cast<int>(c)));
    }
  }
  SubdivisionMatching res;
  res.refined = make_complex(pieces, reverify);
  label_by_coordinates(res.refined);
  PolyComplex xl = x;
  if (!xl.labeled()) label_by_coordinates(xl);

  res.carrier = carrier_map(res.refined, x);
  auto index = cell_index_by_key(res.refined);

  // One fiber per cell of x, of any dimension: the interior cells of that
  // cell's own slicing, with the recursive matching on them.
  std::map<int, Matching> fibers;
  std::vector<int> fiber_of(res.refined.cells.size(), -1);
  std::vector<int> fiber_critical(x.cells.size(), -1);
  for (size_t s = 0; s < x.cells.size(); ++s) {
    SharpCellMatching lr = sharp_cell_matching(x.cell_polytope(static_cast<int>(s)), reverify);
    Matching fm;
    fm.scope = "interior of " + describe_cell(x, static_cast<int>(s));
    for (int id : lr.interior) {
      auto it = index.find(cell_key(lr.x, id));
      if (it == index.end()) {
        throw std::logic_error("refinement is missing an interior cell of " +
                               describe_cell(x, static_cast<int>(s)));
      }
      if (fiber_of[it->second] != -1) {
        throw std::logic_error("interior decompositions overlap");
      }
      fiber_of[it->second] = static_cast<int>(s);
    }
    for (const auto& [lo, hi] : lr.matching.pairs) {
      fm.pairs.push_back({index.at(cell_key(lr.x, lo)), index.at(cell_key(lr.x, hi))});
    }
    std::sort(fm.pairs.begin(), fm.pairs.end());
    fibers[static_cast<int>(s)] = std::move(fm);
    fiber_critical[s] = index.at(cell_key(lr.x, lr.critical));
  }
  for (size_t c = 0; c < res.refined.cells.size(); ++c) {
    if (fiber_of[c] != res.carrier[c]) {
      throw std::logic_error("carrier map disagrees with the interior decomposition at " +
                             describe_cell(res.refined, static_cast<int>(c)));
    }
  }

  // Glue along the face poset of x ordered by vertex containment.
  SmallPoset target;
  target.leq.assign(x.cells.size(), std::vector<char>(x.cells.size(), 0));
  for (size_t a = 0; a < x.cells.size(); ++a) {
    for (size_t b = 0; b < x.cells.size(); ++b) {
      target.leq[a][b] = std::includes(x.cells[b].vertex_ids.begin(), x.cells[b].vertex_ids.end(),
                                       x.cells[a].vertex_ids.begin(), x.cells[a].vertex_ids.end())
                             ? 1
                             : 0;
    }
  }
  PosetView scope = view_of(res.refined);
  res.matching = glue_matchings(scope, res.carrier, target, fibers, reverify);
  res.matching.scope = "grid refinement of the subdivision";

  // Critical cells must biject with the cells of x, keeping dimension and
  // label; they are exactly the per fiber label cells.
  std::vector<char> matched(res.refined.cells.size(), 0);
  for (const auto& [lo, hi] : res.matching.pairs) matched[lo] = matched[hi] = 1;
  for (size_t c = 0; c < res.refined.cells.size(); ++c) {
    if (!matched[c]) res.critical.push_back(static_cast<int>(c));
  }
  std::vector<char> hit(x.cells.size(), 0);
  for (int crit : res.critical) {
    int s = res.carrier[crit];
    if (fiber_critical[s] != crit) {
      throw std::logic_error("critical cell is not the label cell of its carrier");
    }
    if (hit[s]) throw std::logic_error("two critical cells share a carrier");
    hit[s] = 1;
    res.critical_carrier.push_back(s);
    if (res.refined.cells[crit].dim != x.cells[s].dim ||
        !(cell_label(res.refined, crit) == cell_label(xl, s))) {
      throw std::logic_error("critical cell does not preserve dimension and label of " +
                             describe_cell(x, s));
    }
  }
  if (res.critical.size() != x.cells.size()) {
    throw std::logic_error("critical cells do not biject with the subdivision");
  }

  auto rep = is_acyclic_matching(scope, res.matching);
  if (!rep.acyclic) throw std::logic_error("refined matching is cyclic");
  require_homogeneous(scope, res.matching);
  return res;
}

std::vector<GradientPath> gradient_paths(const PolyComplex& xprime, const Matching& m, int tau,
                                         int sigma) {
  PosetView view = view_of(xprime);
  if (tau < 0 || sigma < 0 || tau >= view.size() || sigma >= view.size() || tau == sigma) {
    throw std::invalid_argument("gradient paths need two distinct cells");
  }
  auto partner = partner_table(view, m);
  if (partner[tau] != -1 || partner[sigma] != -1) {
    throw std::invalid_argument("gradient paths are defined between critical cells");
  }
  auto out = modified_digraph(view, partner);

  // Only walk into cells that can still reach sigma.
  std::vector<char> reaches(view.size(), 0);
  {
    std::vector<std::vector<int>> rev(view.size());
    for (int v = 0; v < view.size(); ++v) {
      for (int w : out[v]) rev[w].push_back(v);
    }
    std::vector<int> queue = {sigma};
    reaches[sigma] = 1;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : rev[v]) {
        if (!reaches[w]) {
          reaches[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  std::vector<GradientPath> paths;
  GradientPath cur = {tau};
  std::vector<char> on_path(view.size(), 0);
  on_path[tau] = 1;
  constexpr size_t kMaxPaths = 100000;

  std::vector<std::pair<int, size_t>> stack = {{tau, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (v == sigma) {
      paths.push_back(cur);
      if (paths.size() > kMaxPaths) {
        throw std::runtime_error("too many gradient paths to enumerate");
      }
      on_path[v] = 0;
      cur.pop_back();
      stack.pop_back();
      continue;
    }
    if (next < out[v].size()) {
      int w = out[v][next++];
      if (!reaches[w]) continue;
      if (on_path[w]) throw std::logic_error("gradient path search found a cycle");
      on_path[w] = 1;
      cur.push_back(w);
      stack.push_back({w, 0});
    } else {
      on_path[v] = 0;
      cur.pop_back();
      stack.pop_back();
    }
  }
  return paths;
}

std::vector<std::vector<int>> MorseComplexResult::facet_lists() const {
  std::vector<std::vector<int>> fs(cells.size());
  for (size_t i = 0; i < boundary.size(); ++i) {
    for (const auto& [j, count] : boundary[i]) fs[i].push_back(j);
  }
  return fs;
}

MorseComplexResult morse_complex(const PolyComplex& xprime, const Matching& m,
                                 const PolyComplex* reference) {
  if (!xprime.labeled()) {
    throw std::invalid_argument("collapsing needs a labeled complex");
  }
  PosetView view = view_of(xprime);
  auto rep = is_acyclic_matching(view, m);
  if (!rep.acyclic) throw std::invalid_argument("matching is not acyclic");
  require_homogeneous(view, m);

  auto partner = partner_table(view, m);
  auto out = modified_digraph(view, partner);

  MorseComplexResult res;
  std::vector<int> local(view.size(), -1);
  for (int c = 0; c < view.size(); ++c) {
    if (partner[c] == -1) {
      local[c] = static_cast<int>(res.cells.size());
      res.cells.push_back({c, view.dims[c], view.labels[c]});
    }
  }
  res.boundary.resize(res.cells.size());
  int top = 0;
  for (const auto& mc : res.cells) top = std::max(top, mc.dim);
  res.f.assign(top + 1, 0);
  for (const auto& mc : res.cells) res.f[mc.dim] += 1;

  // Path counts from each critical cell by a forward sweep in topological
  // order of the modified digraph.
  std::vector<int> topo;
  {
    std::vector<int> indeg(view.size(), 0);
    for (int v = 0; v < view.size(); ++v) {
      for (int w : out[v]) indeg[w]++;
    }
    std::vector<int> queue;
    for (int v = 0; v < view.size(); ++v) {
      if (indeg[v] == 0) queue.push_back(v);
    }
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      topo.push_back(v);
      for (int w : out[v]) {
        if (--indeg[w] == 0) queue.push_back(w);
      }
    }
    if (topo.size() != static_cast<size_t>(view.size())) {
      throw std::logic_error("modified digraph is not acyclic");
    }
  }
  constexpr long kMaxCount = 1L << 50;
  for (size_t i = 0; i < res.cells.size(); ++i) {
    const int tau = res.cells[i].cell;
    std::vector<long> ways(view.size(), 0);
    ways[tau] = 1;
    for (int v : topo) {
      if (ways[v] == 0) continue;
      for (int w : out[v]) {
        ways[w] += ways[v];
        if (ways[w] > kMaxCount) throw std::runtime_error("gradient path count overflow");
      }
    }
    for (int c = 0; c < view.size(); ++c) {
      if (local[c] < 0 || view.dims[c] != res.cells[i].dim - 1 || ways[c] == 0) continue;
      res.boundary[i].push_back({local[c], ways[c]});
    }
    std::sort(res.boundary[i].begin(), res.boundary[i].end());
  }

  if (reference) {
    PolyComplex ref = *reference;
    if (!ref.labeled()) label_by_coordinates(ref);
    if (ref.cells.size() != res.cells.size()) {
      throw std::invalid_argument("critical cells do not biject with the reference complex");
    }
    auto carrier = carrier_map(xprime, ref);
    std::vector<int> image(res.cells.size(), -1);
    std::vector<char> hit(ref.cells.size(), 0);
    for (size_t i = 0; i < res.cells.size(); ++i) {
      int s = carrier[res.cells[i].cell];
      if (hit[s]) throw std::invalid_argument("two critical cells land on one reference cell");
      hit[s] = 1;
      image[i] = s;
      if (ref.cells[s].dim != res.cells[i].dim ||
          !(cell_label(ref, s) == res.cells[i].label)) {
        throw std::invalid_argument("critical cell differs from reference cell " +
                                    describe_cell(ref, s) + " in dimension or label");
      }
    }
    for (size_t i = 0; i < res.cells.size(); ++i) {
      std::map<int, long> counts;
      for (const auto& [j, cnt] : res.boundary[i]) counts[j] = cnt;
      for (size_t j = 0; j < res.cells.size(); ++j) {
        if (res.cells[j].dim != res.cells[i].dim - 1) continue;
        const auto& fs = ref.facets_of[image[i]];
        bool facet = std::find(fs.begin(), fs.end(), image[j]) != fs.end();
        long cnt = counts.count(static_cast<int>(j)) ? counts[static_cast<int>(j)] : 0;
        if ((facet && cnt != 1) || (!facet && cnt != 0)) {
          throw std::invalid_argument(
              "boundary mismatch with the reference complex between " +
              describe_cell(ref, image[i]) + " and " + describe_cell(ref, image[j]));
        }
      }
    }
  }
  return res;
}

}  // namespace dicer
