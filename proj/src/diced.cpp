#include "dicer/diced.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dicer/rational.hpp"

namespace dicer {

DicedReport is_diced(const Polytope& p) { return is_diced(grid_subdivision(p)); }

DicedReport is_diced(const PolyComplex& subdivision) {
  DicedReport r;
  r.diced = true;
  for (const Point& v : subdivision.vertices) {
    if (!is_lattice_point(v)) {
      r.diced = false;
      r.witness = v;  // vertices are lex sorted, so the first hit is lex-least
      return r;
    }
  }
  return r;
}

Monomial polytope_label(const Polytope& p) {
  DicedReport d = is_diced(p);
  if (!d.diced) throw std::invalid_argument("label undefined for non-diced polytope");
  std::vector<Point> pts = lattice_points(p);
  Monomial m = monomial_from_point(pts.at(0));
  for (size_t i = 1; i < pts.size(); ++i) m = lcm(m, monomial_from_point(pts[i]));
  return m;
}

SharpnessReport sharp_cell(const Polytope& p) {
  SharpnessReport r;
  r.label = polytope_label(p);
  std::vector<Halfspace> cuts;
  for (int i = 0; i < p.ambient; ++i)
    cuts.push_back(grid_hyperplane(p.ambient, i, Int(r.label.exponents[i]) - 1, Sense::GE));
  std::optional<Polytope> q = intersect(p, cuts);
  const int dp = affine_dim(p);
  if (!q) {
    // No point sits one step below the label in every coordinate at once.
    r.region.ambient = p.ambient;
    r.note = "label region is empty, polytope has dimension " + std::to_string(dp);
    return r;
  }
  r.region = *q;
  const int dq = affine_dim(*q);
  std::ostringstream note;
  note << "label region has dimension " << dq << ", polytope has dimension " << dp;
  r.note = note.str();
  r.is_sharp = dq == dp;
  if (!r.is_sharp) return r;
  r.sigma = *q;

  // The witness must be an honest cell of the sliced complex with the full
  // label; both facts follow from the theory, so failing here means a bug.
  if (polytope_label(*q) != r.label) throw std::logic_error("witness cell does not carry the full label");
  PolyComplex x = grid_subdivision(p);
  bool found = false;
  for (size_t c = 0; c < x.cells.size() && !found; ++c)
    found = x.cell_polytope(static_cast<int>(c)).vertices == q->vertices;
  if (!found) throw std::logic_error("witness cell is not a cell of the sliced complex");
  return r;
}

TotalSharpnessReport is_totally_sharp(const Polytope& p) {
  TotalSharpnessReport r;
  for (const Polytope& face : enumerate_faces(p)) {
    if (!sharp_cell(face).is_sharp) {
      r.witness_face = face;
      return r;
    }
  }
  r.totally_sharp = true;
  return r;
}

namespace {

// Iterates k-subsets of {0..m-1} in lex order.
bool next_subset(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == m - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace

UnimodularityReport is_totally_unimodular(const std::vector<std::vector<Int>>& m) {
  UnimodularityReport r;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
  if (rows + cols > 14) throw std::invalid_argument("exhaustive total unimodularity check too large");

  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<int> ri(k), ci(k);
    for (int i = 0; i < k; ++i) ri[i] = i;
    do {
      for (int i = 0; i < k; ++i) ci[i] = i;
      do {
        Mat sub(k, Vec(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub[i][j] = Rational(m[ri[i]][ci[j]]);
        Rational det = determinant(sub);
        if (det != 0 && det != 1 && det != -1) {
          r.witness = {ri, ci};
          return r;
        }
      } while (next_subset(ci, cols));
    } while (next_subset(ri, rows));
  }
  r.totally_unimodular = true;
  return r;
}

std::optional<Polytope> tu_polytope(const std::vector<std::vector<Int>>& m, const std::vector<Int>& beta) {
  const int rows = static_cast<int>(m.size());
  if (static_cast<int>(beta.size()) != rows) throw std::invalid_argument("offset count does not match row count");
  if (rows == 0) throw std::invalid_argument("empty constraint matrix");
  const int n = static_cast<int>(m[0].size());
  UnimodularityReport u = is_totally_unimodular(m);
  if (!u.totally_unimodular) throw std::invalid_argument("matrix is not totally unimodular");

  std::vector<Halfspace> hs;
  for (int i = 0; i < n; ++i) hs.push_back(grid_hyperplane(n, i, 0, Sense::GE));
  for (int r = 0; r < rows; ++r) {
    bool zero = std::all_of(m[r].begin(), m[r].end(), [](const Int& v) { return v == 0; });
    if (zero) {
      if (beta[r] < 0) return std::nullopt;  // 0 <= negative: infeasible row
      continue;
    }
    Vec normal(n);
    for (int j = 0; j < n; ++j) normal[j] = Rational(m[r][j]);
    hs.push_back(make_halfspace(normal, Rational(beta[r]), Sense::LE));
  }
  std::optional<Polytope> p = polytope_from_halfspaces(n, hs);
  if (!p) return std::nullopt;
  DicedReport d = is_diced(*p);
  if (!d.diced)
    throw std::logic_error("totally unimodular system produced a non-diced polytope at vertex " +
                           to_string(*d.witness));
  return p;
}

}  // namespace dicer
