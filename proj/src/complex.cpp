#include "dicer/complex.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dicer/rational.hpp"

namespace dicer {

int PolyComplex::dim() const {
  int d = -1;
  for (const Cell& c : cells) d = std::max(d, c.dim);
  return d;
}

Polytope PolyComplex::cell_polytope(int c) const {
  Polytope p;
  p.ambient = ambient;
  for (int id : cells.at(c).vertex_ids) p.vertices.push_back(vertices[id]);
  return p;
}

PolyComplex make_complex(const std::vector<Polytope>& generating_cells, bool validate) {
  if (generating_cells.empty()) throw std::invalid_argument("complex needs at least one cell");
  const int n = generating_cells[0].ambient;
  for (const Polytope& p : generating_cells)
    if (p.ambient != n) throw std::invalid_argument("cells of mixed ambient dimension");

  std::vector<std::vector<Polytope>> face_lists;
  face_lists.reserve(generating_cells.size());
  for (const Polytope& p : generating_cells) face_lists.push_back(enumerate_faces(p));

  if (validate) {
    for (size_t a = 0; a < generating_cells.size(); ++a) {
      for (size_t b = a + 1; b < generating_cells.size(); ++b) {
        auto meet = intersect(generating_cells[a], facet_description(generating_cells[b]));
        if (!meet) continue;
        for (size_t s : {a, b}) {
          bool is_face = false;
          for (const Polytope& f : face_lists[s])
            if (f.vertices == meet->vertices) { is_face = true; break; }
          if (!is_face)
            throw std::invalid_argument("cells " + std::to_string(a) + " and " + std::to_string(b) +
                                        " do not meet in a common face");
        }
      }
    }
  }

  PolyComplex x;
  x.ambient = n;
  std::set<Point> vertex_set;
  for (const auto& faces : face_lists)
    for (const Polytope& f : faces)
      if (f.vertices.size() == 1) vertex_set.insert(f.vertices[0]);
  x.vertices.assign(vertex_set.begin(), vertex_set.end());
  std::map<Point, int> vid;
  for (size_t i = 0; i < x.vertices.size(); ++i) vid[x.vertices[i]] = static_cast<int>(i);

  std::set<std::vector<int>> cell_set;
  for (const auto& faces : face_lists) {
    for (const Polytope& f : faces) {
      std::vector<int> ids;
      for (const Point& v : f.vertices) ids.push_back(vid.at(v));
      std::sort(ids.begin(), ids.end());
      cell_set.insert(std::move(ids));
    }
  }
  for (const std::vector<int>& ids : cell_set) {
    Cell c;
    c.vertex_ids = ids;
    std::vector<Point> pts;
    for (int id : ids) pts.push_back(x.vertices[id]);
    c.dim = affine_dim(pts);
    x.cells.push_back(std::move(c));
  }
  std::sort(x.cells.begin(), x.cells.end(), [](const Cell& a, const Cell& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertex_ids < b.vertex_ids;
  });

  x.facets_of.assign(x.cells.size(), {});
  x.cofacets_of.assign(x.cells.size(), {});
  for (size_t c = 0; c < x.cells.size(); ++c) {
    for (size_t d = 0; d < x.cells.size(); ++d) {
      if (x.cells[d].dim != x.cells[c].dim - 1) continue;
      if (std::includes(x.cells[c].vertex_ids.begin(), x.cells[c].vertex_ids.end(),
                        x.cells[d].vertex_ids.begin(), x.cells[d].vertex_ids.end())) {
        x.facets_of[c].push_back(static_cast<int>(d));
        x.cofacets_of[d].push_back(static_cast<int>(c));
      }
    }
  }
  return x;
}

PolyComplex grid_subdivision(const Polytope& p) {
  // The recursive matching construction re-slices the same pieces many
  // times over, so results are memoized by vertex set.
  static std::mutex cache_mutex;
  static std::map<std::pair<int, std::vector<Point>>, PolyComplex> cache;
  const std::pair<int, std::vector<Point>> key{p.ambient, p.vertices};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const int d = affine_dim(p);
  std::vector<Polytope> pieces = {p};
  for (int i = 0; i < p.ambient; ++i) {
    Rational lo = p.vertices[0][i], hi = p.vertices[0][i];
    for (const Point& v : p.vertices) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    for (Int j = rational_floor(lo) + 1; Rational(j) < hi; ++j) {
      std::vector<Polytope> next;
      for (const Polytope& q : pieces) {
        for (Sense s : {Sense::LE, Sense::GE}) {
          auto r = intersect(q, {grid_hyperplane(p.ambient, i, j, s)});
          if (r && affine_dim(*r) == d) next.push_back(std::move(*r));
        }
      }
      pieces = std::move(next);
    }
  }
  PolyComplex result = make_complex(pieces);
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(key, result);
  return result;
}

void label_by_coordinates(PolyComplex& x) {
  x.vertex_labels.clear();
  x.vertex_labels.reserve(x.vertices.size());
  for (const Point& v : x.vertices) x.vertex_labels.push_back(monomial_from_point(v));
}

Monomial cell_label(const PolyComplex& x, int c) {
  if (!x.labeled()) throw std::logic_error("complex has no vertex labels");
  const std::vector<int>& ids = x.cells.at(c).vertex_ids;
  Monomial m = x.vertex_labels.at(ids.at(0));
  for (size_t i = 1; i < ids.size(); ++i) m = lcm(m, x.vertex_labels[ids[i]]);
  return m;
}

std::vector<Monomial> cell_labels(const PolyComplex& x) {
  std::vector<Monomial> out;
  out.reserve(x.cells.size());
  for (size_t c = 0; c < x.cells.size(); ++c) out.push_back(cell_label(x, static_cast<int>(c)));
  return out;
}

Monomial half_open_box_corner(const Polytope& cell) {
  Monomial m;
  for (int i = 0; i < cell.ambient; ++i) {
    Rational lo = cell.vertices[0][i], hi = cell.vertices[0][i];
    for (const Point& v : cell.vertices) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    if (hi - lo > 1) throw std::invalid_argument("cell spans more than one unit box");
    if (!is_integer(hi)) throw std::invalid_argument("cell has a non-integral upper corner");
    m.exponents.push_back(to_long_checked(numerator(hi)));
  }
  return m;
}

std::vector<int> interior_cells(const PolyComplex& x, const Polytope& p) {
  std::vector<const Halfspace*> walls;
  std::vector<Halfspace> desc = facet_description(p);
  for (const Halfspace& h : desc)
    if (h.sense != Sense::EQ) walls.push_back(&h);
  std::vector<int> out;
  for (size_t c = 0; c < x.cells.size(); ++c) {
    bool boundary = false;
    for (const Halfspace* h : walls) {
      bool all_tight = true;
      for (int id : x.cells[c].vertex_ids) {
        Rational s = 0;
        for (int i = 0; i < x.ambient; ++i) s += Rational(h->normal[i]) * x.vertices[id][i];
        if (s != h->offset) { all_tight = false; break; }
      }
      if (all_tight) { boundary = true; break; }
    }
    if (!boundary) out.push_back(static_cast<int>(c));
  }
  return out;
}

std::vector<int> restriction_cells(const PolyComplex& x, const Monomial& m) {
  std::vector<int> out;
  for (size_t c = 0; c < x.cells.size(); ++c)
    if (cell_label(x, static_cast<int>(c)).divides(m)) out.push_back(static_cast<int>(c));
  return out;
}

std::vector<long> f_vector(const PolyComplex& x) {
  std::vector<long> f(static_cast<size_t>(x.dim() + 1), 0);
  for (const Cell& c : x.cells) ++f[c.dim];
  return f;
}

CellKey cell_key(const PolyComplex& x, int c) {
  CellKey k;
  for (int id : x.cells.at(c).vertex_ids) k.push_back(x.vertices[id]);
  std::sort(k.begin(), k.end());
  return k;
}

std::map<CellKey, int> cell_index_by_key(const PolyComplex& x) {
  std::map<CellKey, int> m;
  for (size_t c = 0; c < x.cells.size(); ++c) m[cell_key(x, static_cast<int>(c))] = static_cast<int>(c);
  return m;
}

std::string describe_cell(const PolyComplex& x, int c) {
  std::ostringstream os;
  os << "dim " << x.cells.at(c).dim << " cell {";
  const auto& ids = x.cells[c].vertex_ids;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ", ";
    os << to_string(x.vertices[ids[i]]);
  }
  os << "}";
  return os.str();
}

}  // namespace dicer
