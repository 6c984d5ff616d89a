#include "dicer/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dicer {

namespace {

constexpr long kComboGuard = 2'000'000;  // desk-scale cap on brute-force enumeration

Rational dot(const std::vector<Int>& a, const Point& x) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * x[i];
  return s;
}

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Affine chart of a point configuration: an invertible linear map from the
// affine hull to Q^d with rational inverse, used so facet search and rank
// tests always run full-dimensional.
struct Chart {
  Point base;
  std::vector<Vec> basis;       // d independent direction vectors, length n
  std::vector<int> pivot_rows;  // rows R with B_R invertible
  Mat b_r_inv;                  // inverse of B_R
  int dim = 0;
  int ambient = 0;

  Vec to_chart(const Point& x) const {
    Vec y(dim, Rational(0));
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < dim; ++j) y[k] += b_r_inv[k][j] * (x[pivot_rows[j]] - base[pivot_rows[j]]);
    return y;
  }

  // Chart coordinates of an ambient linear functional (its restriction to
  // the hull's direction space): a_chart = B^T a.
  Vec functional_to_chart(const std::vector<Int>& normal) const {
    Vec a(dim, Rational(0));
    for (int k = 0; k < dim; ++k)
      for (int r = 0; r < ambient; ++r) a[k] += basis[k][r] * Rational(normal[r]);
    return a;
  }
};

Chart make_chart(const std::vector<Point>& pts) {
  Chart ch;
  ch.base = pts.at(0);
  ch.ambient = static_cast<int>(ch.base.size());
  // Greedily select affinely independent differences.
  Mat rows;
  for (size_t i = 1; i < pts.size(); ++i) {
    Vec d = sub(pts[i], ch.base);
    rows.push_back(d);
    if (rank_of(rows) == static_cast<int>(rows.size()))
      ch.basis.push_back(d);
    else
      rows.pop_back();
  }
  ch.dim = static_cast<int>(ch.basis.size());
  if (ch.dim == 0) return ch;
  // Pivot rows: independent rows of the n x d basis matrix.
  Mat bt = ch.basis;  // d rows of length n
  Mat sel;
  for (int r = 0; r < ch.ambient && static_cast<int>(sel.size()) < ch.dim; ++r) {
    Vec col(ch.dim);
    for (int k = 0; k < ch.dim; ++k) col[k] = ch.basis[k][r];
    sel.push_back(col);
    if (rank_of(sel) == static_cast<int>(sel.size()))
      ch.pivot_rows.push_back(r);
    else
      sel.pop_back();
  }
  if (static_cast<int>(ch.pivot_rows.size()) != ch.dim)
    throw std::logic_error("chart: basis matrix lost rank");
  Mat b_r(ch.dim, Vec(ch.dim));
  for (int j = 0; j < ch.dim; ++j)
    for (int k = 0; k < ch.dim; ++k) b_r[j][k] = ch.basis[k][ch.pivot_rows[j]];
  ch.b_r_inv = inverse(b_r);
  return ch;
}

struct ChartIneq {
  std::vector<Int> a;  // jointly primitive with c, oriented a.y <= c
  Int c = 0;
};

Rational idot(const std::vector<Int>& a, const Vec& y) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * y[i];
  return s;
}

// Brute-force facet search in full-dimensional chart coordinates: every
// hyperplane spanned by d affinely independent points with all points on one
// side is facet-defining, and every facet arises this way.
std::vector<ChartIneq> chart_facets(const std::vector<Vec>& ys, int d) {
  std::vector<ChartIneq> out;
  if (d == 0) return out;
  const int m = static_cast<int>(ys.size());
  std::set<std::pair<std::vector<Int>, Int>> seen;

  auto consider = [&](const Vec& a_rat, const Rational& c_rat) {
    Vec joint = a_rat;
    joint.push_back(c_rat);
    std::vector<Int> ji = primitive_integer_vector(joint);
    std::vector<Int> a(ji.begin(), ji.end() - 1);
    Int c = ji.back();
    bool above = false, below = false;
    for (const Vec& y : ys) {
      Rational s = idot(a, y) - Rational(c);
      if (s > 0) above = true;
      if (s < 0) below = true;
      if (above && below) return;
    }
    if (!above && !below) return;  // all tight: degenerate configuration
    if (above) {
      for (auto& v : a) v = -v;
      c = -c;
    }
    if (seen.insert({a, c}).second) out.push_back({std::move(a), c});
  };

  if (d == 1) {
    for (const Vec& y : ys) consider(Vec{Rational(1)}, y[0]);
    return out;
  }

  // Enumerate d-subsets.
  long combos = 1;
  for (int i = 0; i < d; ++i) {
    combos = combos * (m - i) / (i + 1);
    if (combos > kComboGuard) throw std::runtime_error("facet enumeration too large for desk scale");
  }
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    Mat rows;
    for (int i = 1; i < d; ++i) {
      Vec r(d);
      for (int j = 0; j < d; ++j) r[j] = ys[idx[i]][j] - ys[idx[0]][j];
      rows.push_back(std::move(r));
    }
    std::vector<Vec> ns = nullspace(rows);
    if (ns.size() == 1) {
      Rational c = 0;
      for (int j = 0; j < d; ++j) c += ns[0][j] * ys[idx[0]][j];
      consider(ns[0], c);
    }
    // next combination
    int i = d - 1;
    while (i >= 0 && idx[i] == m - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Point> dedupe_sorted(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << ")";
  return os.str();
}

std::string to_string(const Polytope& p) {
  std::string out = "{";
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.vertices[i]);
  }
  return out + "}";
}

bool is_lattice_point(const Point& p) {
  for (const auto& c : p)
    if (!is_integer(c)) return false;
  return true;
}

Halfspace make_halfspace(const Vec& normal, const Rational& offset, Sense sense) {
  Vec joint = normal;
  joint.push_back(offset);
  std::vector<Int> ji = primitive_integer_vector(joint);
  Halfspace h;
  h.normal.assign(ji.begin(), ji.end() - 1);
  h.offset = ji.back();
  h.sense = sense;
  bool zero = true;
  for (const auto& v : h.normal)
    if (v != 0) zero = false;
  if (zero) throw std::invalid_argument("halfspace with zero normal");
  if (sense == Sense::EQ) {
    for (const auto& v : h.normal) {
      if (v == 0) continue;
      if (v < 0) {
        for (auto& w : h.normal) w = -w;
        h.offset = -h.offset;
      }
      break;
    }
  }
  return h;
}

Halfspace grid_hyperplane(int ambient, int coord, const Int& level, Sense sense) {
  Vec normal(ambient, Rational(0));
  normal.at(coord) = 1;
  return make_halfspace(normal, Rational(level), sense);
}

bool satisfies(const Halfspace& h, const Point& x) {
  Rational s = dot(h.normal, x);
  switch (h.sense) {
    case Sense::LE: return s <= h.offset;
    case Sense::GE: return s >= h.offset;
    case Sense::EQ: return s == h.offset;
  }
  return false;
}

std::string to_string(const Halfspace& h) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < h.normal.size(); ++i) {
    if (h.normal[i] == 0) continue;
    Int c = h.normal[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (abs(c) != 1) os << abs(c) << "*";
    os << "x" << (i + 1);
    first = false;
  }
  switch (h.sense) {
    case Sense::LE: os << " <= "; break;
    case Sense::GE: os << " >= "; break;
    case Sense::EQ: os << " = "; break;
  }
  os << h.offset;
  return os.str();
}

int affine_dim(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  Mat rows;
  for (size_t i = 1; i < points.size(); ++i) rows.push_back(sub(points[i], points[0]));
  return rank_of(rows);
}

int affine_dim(const Polytope& p) { return affine_dim(p.vertices); }

Polytope convex_hull_vertices(std::vector<Point> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  const int n = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("points of mixed dimension");
  points = dedupe_sorted(std::move(points));
  Polytope out;
  out.ambient = n;
  if (points.size() == 1) {
    out.vertices = points;
    return out;
  }
  Chart ch = make_chart(points);
  std::vector<Vec> ys;
  ys.reserve(points.size());
  for (const auto& p : points) ys.push_back(ch.to_chart(p));
  std::vector<ChartIneq> facets = chart_facets(ys, ch.dim);
  for (size_t i = 0; i < points.size(); ++i) {
    Mat tight;
    for (const auto& f : facets) {
      if (idot(f.a, ys[i]) != Rational(f.c)) continue;
      Vec row(f.a.size());
      for (size_t j = 0; j < f.a.size(); ++j) row[j] = Rational(f.a[j]);
      tight.push_back(std::move(row));
    }
    if (rank_of(tight) == ch.dim) out.vertices.push_back(points[i]);
  }
  return out;
}

std::vector<Halfspace> facet_description(const Polytope& p) {
  if (p.vertices.empty()) throw std::invalid_argument("empty point set");
  const int n = p.ambient;
  std::vector<Halfspace> eqs, ineqs;
  if (p.vertices.size() == 1) {
    for (int i = 0; i < n; ++i) {
      Vec normal(n, Rational(0));
      normal[i] = 1;
      eqs.push_back(make_halfspace(normal, p.vertices[0][i], Sense::EQ));
    }
    return eqs;
  }
  Mat diffs;
  for (size_t i = 1; i < p.vertices.size(); ++i) diffs.push_back(sub(p.vertices[i], p.vertices[0]));
  for (const Vec& a : nullspace(diffs)) {
    Rational c = 0;
    for (int j = 0; j < n; ++j) c += a[j] * p.vertices[0][j];
    eqs.push_back(make_halfspace(a, c, Sense::EQ));
  }

  Chart ch = make_chart(p.vertices);
  std::vector<Vec> ys;
  for (const auto& v : p.vertices) ys.push_back(ch.to_chart(v));
  for (const ChartIneq& f : chart_facets(ys, ch.dim)) {
    // Lift a.y <= c through y = B_R^{-1} (x - base)_R.
    Vec w(n, Rational(0));
    for (int j = 0; j < ch.dim; ++j) {
      Rational coef = 0;
      for (int k = 0; k < ch.dim; ++k) coef += Rational(f.a[k]) * ch.b_r_inv[k][j];
      w[ch.pivot_rows[j]] = coef;
    }
    Rational off = Rational(f.c);
    for (int j = 0; j < n; ++j) off += w[j] * ch.base[j];
    ineqs.push_back(make_halfspace(w, off, Sense::LE));
  }

  auto key = [](const Halfspace& h) { return std::make_pair(h.normal, h.offset); };
  std::sort(eqs.begin(), eqs.end(), [&](const Halfspace& a, const Halfspace& b) { return key(a) < key(b); });
  std::sort(ineqs.begin(), ineqs.end(), [&](const Halfspace& a, const Halfspace& b) { return key(a) < key(b); });
  eqs.insert(eqs.end(), ineqs.begin(), ineqs.end());
  return eqs;
}

std::optional<Polytope> intersect(const Polytope& p, const std::vector<Halfspace>& cuts) {
  const int n = p.ambient;
  std::vector<Halfspace> all = facet_description(p);
  all.insert(all.end(), cuts.begin(), cuts.end());

  Mat a_eq;
  Vec b_eq;
  std::vector<std::pair<Vec, Rational>> les;  // a.x <= b
  for (const Halfspace& h : all) {
    Vec a(n);
    for (int j = 0; j < n; ++j) a[j] = Rational(h.normal[j]);
    Rational b = Rational(h.offset);
    switch (h.sense) {
      case Sense::EQ:
        a_eq.push_back(a);
        b_eq.push_back(b);
        break;
      case Sense::LE: les.push_back({a, b}); break;
      case Sense::GE:
        for (auto& v : a) v = -v;
        les.push_back({a, -b});
        break;
    }
  }

  std::optional<Vec> x0;
  std::vector<Vec> ns;
  if (a_eq.empty()) {
    x0 = Vec(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      Vec e(n, Rational(0));
      e[i] = 1;
      ns.push_back(e);
    }
  } else {
    x0 = solve_linear(a_eq, b_eq);
    if (!x0) return std::nullopt;
    ns = nullspace(a_eq);
  }
  const int k = static_cast<int>(ns.size());

  auto lift = [&](const Vec& t) {
    Point x = *x0;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) x[i] += t[j] * ns[j][i];
    return x;
  };

  if (k == 0) {
    Point x = *x0;
    for (const auto& [a, b] : les) {
      Rational s = 0;
      for (int i = 0; i < n; ++i) s += a[i] * x[i];
      if (s > b) return std::nullopt;
    }
    Polytope out;
    out.ambient = n;
    out.vertices = {x};
    return out;
  }

  // Substitute x = x0 + N t.
  const int rows = static_cast<int>(les.size());
  Mat ap(rows, Vec(k, Rational(0)));
  Vec bp(rows);
  for (int r = 0; r < rows; ++r) {
    Rational shift = 0;
    for (int i = 0; i < n; ++i) shift += les[r].first[i] * (*x0)[i];
    bp[r] = les[r].second - shift;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) ap[r][j] += les[r].first[i] * ns[j][i];
  }

  long combos = 1;
  for (int i = 0; i < k; ++i) {
    if (rows - i <= 0) { combos = 0; break; }
    combos = combos * (rows - i) / (i + 1);
    if (combos > kComboGuard) throw std::runtime_error("vertex enumeration too large for desk scale");
  }

  std::vector<Point> found;
  if (combos > 0) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Mat sq(k, Vec(k));
      Vec rhs(k);
      for (int i = 0; i < k; ++i) {
        sq[i] = ap[idx[i]];
        rhs[i] = bp[idx[i]];
      }
      if (determinant(sq) != 0) {
        std::optional<Vec> t = solve_linear(sq, rhs);
        bool feasible = true;
        for (int r = 0; r < rows && feasible; ++r) {
          Rational s = 0;
          for (int j = 0; j < k; ++j) s += ap[r][j] * (*t)[j];
          if (s > bp[r]) feasible = false;
        }
        if (feasible) found.push_back(lift(*t));
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == rows - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  found = dedupe_sorted(std::move(found));
  if (found.empty()) return std::nullopt;
  Polytope out;
  out.ambient = n;
  out.vertices = std::move(found);
  return out;
}

std::optional<Polytope> polytope_from_halfspaces(int ambient, const std::vector<Halfspace>& hs) {
  const int n = ambient;
  std::vector<std::pair<Vec, Rational>> les;  // a.x <= b
  for (const Halfspace& h : hs) {
    Vec a(n);
    for (int j = 0; j < n; ++j) a[j] = Rational(h.normal[j]);
    Rational b = Rational(h.offset);
    switch (h.sense) {
      case Sense::LE: les.push_back({a, b}); break;
      case Sense::GE: {
        Vec na = a;
        for (auto& v : na) v = -v;
        les.push_back({na, -b});
        break;
      }
      case Sense::EQ: {
        les.push_back({a, b});
        Vec na = a;
        for (auto& v : na) v = -v;
        les.push_back({na, -b});
        break;
      }
    }
  }
  const int rows = static_cast<int>(les.size());
  {
    Mat normals;
    for (const auto& [a, b] : les) normals.push_back(a);
    // Rank n makes the recession cone pointed, so emptiness and boundedness
    // are both decidable from basic solutions and extreme rays below.
    if (rank_of(normals) < n) throw std::runtime_error("constraint normals do not span the ambient space");
  }

  auto feasible = [&](const Point& x) {
    for (const auto& [a, b] : les) {
      Rational s = 0;
      for (int i = 0; i < n; ++i) s += a[i] * x[i];
      if (s > b) return false;
    }
    return true;
  };

  auto for_each_subset = [&](int k, auto&& body) {
    if (k == 0 || rows < k) return;
    long combos = 1;
    for (int i = 0; i < k; ++i) {
      combos = combos * (rows - i) / (i + 1);
      if (combos > kComboGuard) throw std::runtime_error("basic solution enumeration too large for desk scale");
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      body(idx);
      int i = k - 1;
      while (i >= 0 && idx[i] == rows - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  };

  // Basic feasible solutions: n independent tight constraints.  A nonempty
  // region inside a pointed setup has at least one; we require the vertex
  // candidates to certify nonemptiness before testing boundedness.
  std::vector<Point> found;
  for_each_subset(n, [&](const std::vector<int>& idx) {
    Mat sq(n, Vec(n));
    Vec rhs(n);
    for (int i = 0; i < n; ++i) {
      sq[i] = les[idx[i]].first;
      rhs[i] = les[idx[i]].second;
    }
    if (determinant(sq) == 0) return;
    std::optional<Vec> x = solve_linear(sq, rhs);
    if (x && feasible(*x)) found.push_back(*x);
  });
  if (found.empty()) return std::nullopt;

  // Recession cone {d : a.d <= 0 for all rows}; a nonzero extreme ray lies
  // on n-1 independent tight constraints.  None found means bounded.
  for_each_subset(n - 1, [&](const std::vector<int>& idx) {
    Mat sub;
    for (int i : idx) sub.push_back(les[i].first);
    std::vector<Vec> ns = nullspace(sub);
    if (ns.size() != 1) return;
    for (const Vec& dir : {ns[0], [&] { Vec m = ns[0]; for (auto& v : m) v = -v; return m; }()}) {
      bool recedes = true;
      for (const auto& [a, b] : les) {
        Rational s = 0;
        for (int i = 0; i < n; ++i) s += a[i] * dir[i];
        if (s > 0) { recedes = false; break; }
      }
      if (recedes) throw std::runtime_error("region is unbounded");
    }
  });
  if (n == 1 && rows >= 1) {
    // n-1 = 0 subsets are skipped above; test the two axis directions.
    for (Rational s : {Rational(1), Rational(-1)}) {
      bool recedes = true;
      for (const auto& [a, b] : les)
        if (a[0] * s > 0) { recedes = false; break; }
      if (recedes) throw std::runtime_error("region is unbounded");
    }
  }

  Polytope out = convex_hull_vertices(std::move(found));
  return out;
}

std::vector<Point> lattice_points(const Polytope& p) {
  const int n = p.ambient;
  std::vector<Halfspace> desc = facet_description(p);
  std::vector<Int> lo(n), hi(n);
  Rational box = 1;
  for (int i = 0; i < n; ++i) {
    Rational mn = p.vertices[0][i], mx = p.vertices[0][i];
    for (const auto& v : p.vertices) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = rational_ceil(mn);
    hi[i] = rational_floor(mx);
    box *= Rational(hi[i] - lo[i] + 1);
    if (box > kComboGuard) throw std::runtime_error("lattice point scan too large for desk scale");
  }
  std::vector<Point> out;
  Point cur(n);
  auto scan = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (polytope_contains(desc, cur)) out.push_back(cur);
      return;
    }
    for (Int v = lo[i]; v <= hi[i]; ++v) {
      cur[i] = Rational(v);
      self(self, i + 1);
    }
  };
  scan(scan, 0);
  return out;  // lex sorted by scan order
}

bool polytope_contains(const std::vector<Halfspace>& description, const Point& x) {
  for (const Halfspace& h : description)
    if (!satisfies(h, x)) return false;
  return true;
}

bool polytope_contains(const Polytope& p, const Point& x) {
  return polytope_contains(facet_description(p), x);
}

std::vector<std::vector<int>> facet_vertex_sets(const std::vector<Point>& verts,
                                                const std::vector<Halfspace>& description) {
  const int m = static_cast<int>(verts.size());
  const int d = affine_dim(verts);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (const Halfspace& h : description) {
    if (h.sense == Sense::EQ) continue;
    std::vector<int> tight;
    for (int i = 0; i < m; ++i) {
      Rational s = dot(h.normal, verts[i]);
      if (s == h.offset) tight.push_back(i);
    }
    if (tight.empty() || static_cast<int>(tight.size()) == m) continue;
    Mat rows;
    for (size_t i = 1; i < tight.size(); ++i)
      rows.push_back(sub(verts[tight[i]], verts[tight[0]]));
    if (rank_of(rows) != d - 1) continue;
    if (seen.insert(tight).second) out.push_back(tight);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> polytope_edges(const std::vector<Point>& verts,
                                                const std::vector<Halfspace>& description) {
  const int m = static_cast<int>(verts.size());
  Chart ch = make_chart(verts);
  if (ch.dim == 0) return {};
  std::vector<const Halfspace*> ineqs;
  for (const Halfspace& h : description)
    if (h.sense != Sense::EQ) ineqs.push_back(&h);
  const int q = static_cast<int>(ineqs.size());
  std::vector<std::vector<char>> tight(m, std::vector<char>(q, 0));
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < q; ++c)
      tight[i][c] = dot(ineqs[c]->normal, verts[i]) == ineqs[c]->offset;

  std::vector<Vec> chart_normals(q);
  for (int c = 0; c < q; ++c) chart_normals[c] = ch.functional_to_chart(ineqs[c]->normal);

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      std::vector<int> common;
      for (int c = 0; c < q; ++c)
        if (tight[i][c] && tight[j][c]) common.push_back(c);
      Mat rows;
      for (int c : common) rows.push_back(chart_normals[c]);
      if (rank_of(rows) != ch.dim - 1) continue;
      int on_line = 0;
      for (int v = 0; v < m && on_line <= 2; ++v) {
        bool all = true;
        for (int c : common)
          if (!tight[v][c]) { all = false; break; }
        if (all) ++on_line;
      }
      if (on_line == 2) edges.push_back({i, j});
    }
  }
  return edges;
}

Rational normalized_volume(const Polytope& p) {
  const int n = p.ambient;
  const int d = affine_dim(p);
  if (d == 0) return Rational(1);
  std::vector<Halfspace> desc = facet_description(p);

  // Triangulate by coning the lex-least vertex over the facets missing it.
  std::vector<std::vector<int>> simplices;
  auto tri = [&](auto&& self, const std::vector<int>& ids) -> std::vector<std::vector<int>> {
    if (ids.size() == 1) return {{ids[0]}};
    std::vector<Point> sub_verts;
    for (int id : ids) sub_verts.push_back(p.vertices[id]);
    std::vector<std::vector<int>> result;
    const int v0 = ids[0];
    for (const std::vector<int>& f : facet_vertex_sets(sub_verts, desc)) {
      std::vector<int> fids;
      for (int local : f) fids.push_back(ids[local]);
      if (std::find(fids.begin(), fids.end(), v0) != fids.end()) continue;
      for (std::vector<int> s : self(self, fids)) {
        s.insert(s.begin(), v0);
        result.push_back(std::move(s));
      }
    }
    return result;
  };
  std::vector<int> all(p.vertices.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  simplices = tri(tri, all);

  // Basis of the lattice of the direction space of aff(P).
  Mat diffs;
  for (size_t i = 1; i < p.vertices.size(); ++i) diffs.push_back(sub(p.vertices[i], p.vertices[0]));
  std::vector<std::vector<Int>> comp;
  for (const Vec& a : nullspace(diffs)) comp.push_back(primitive_integer_vector(a));
  std::vector<std::vector<Int>> lattice = integer_kernel_basis(comp, n);
  if (static_cast<int>(lattice.size()) != d) throw std::logic_error("normalized_volume: lattice rank mismatch");

  // Left inverse of the lattice basis matrix via an invertible row subset.
  std::vector<int> piv;
  Mat sel;
  for (int r = 0; r < n && static_cast<int>(piv.size()) < d; ++r) {
    Vec col(d);
    for (int k = 0; k < d; ++k) col[k] = Rational(lattice[k][r]);
    sel.push_back(col);
    if (rank_of(sel) == static_cast<int>(sel.size()))
      piv.push_back(r);
    else
      sel.pop_back();
  }
  Mat lr(d, Vec(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) lr[j][k] = Rational(lattice[k][piv[j]]);
  Mat lr_inv = inverse(lr);

  auto lattice_coords = [&](const Point& u) {
    Vec y(d, Rational(0));
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) y[k] += lr_inv[k][j] * u[piv[j]];
    return y;
  };

  Rational vol = 0;
  for (const std::vector<int>& s : simplices) {
    Mat edges(d, Vec(d));
    for (int j = 1; j <= d; ++j) edges[j - 1] = lattice_coords(sub(p.vertices[s[j]], p.vertices[s[0]]));
    Rational det = determinant(edges);
    vol += det < 0 ? -det : det;
  }
  return vol;
}

std::vector<Polytope> enumerate_faces(const Polytope& p) {
  std::vector<Halfspace> desc = facet_description(p);
  std::set<std::vector<int>> seen;
  auto walk = [&](auto&& self, const std::vector<int>& ids) -> void {
    if (!seen.insert(ids).second) return;
    if (ids.size() == 1) return;
    std::vector<Point> sub_verts;
    for (int id : ids) sub_verts.push_back(p.vertices[id]);
    for (const std::vector<int>& f : facet_vertex_sets(sub_verts, desc)) {
      std::vector<int> fids;
      for (int local : f) fids.push_back(ids[local]);
      self(self, fids);
    }
  };
  std::vector<int> all(p.vertices.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  walk(walk, all);

  std::vector<Polytope> faces;
  for (const std::vector<int>& ids : seen) {
    Polytope f;
    f.ambient = p.ambient;
    for (int id : ids) f.vertices.push_back(p.vertices[id]);
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Polytope& a, const Polytope& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return faces;
}

}  // namespace dicer
