#include "dicer/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dicer {

namespace {

// Row echelon in place; returns pivot columns.  Rows beyond the returned
// pivots are zero afterwards.
std::vector<int> echelonize(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    const Rational inv = Rational(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_of(Mat m) { return static_cast<int>(echelonize(m).size()); }

Rational determinant(Mat m) {
  const int n = static_cast<int>(m.size());
  for (auto& row : m)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("determinant: non-square matrix");
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) return Rational(0);
    if (p != c) { std::swap(m[c], m[p]); det = -det; }
    det *= m[c][c];
    const Rational inv = Rational(1) / m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rational f = m[i][c] * inv;
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

Mat inverse(Mat m) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw std::invalid_argument("inverse: non-square matrix");
    for (int j = 0; j < n; ++j) m[i].push_back(i == j ? Rational(1) : Rational(0));
  }
  std::vector<int> pivots = echelonize(m);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
    throw std::invalid_argument("inverse: singular matrix");
  Mat inv(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::optional<Vec> solve_linear(Mat a, Vec b) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return Vec{};
  const int cols = static_cast<int>(a[0].size());
  for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = echelonize(a);
  for (int c : pivots)
    if (c == cols) return std::nullopt;  // pivot in the augmented column
  Vec x(cols, Rational(0));
  for (int r = 0; r < static_cast<int>(pivots.size()); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

std::vector<Vec> nullspace(Mat a) {
  if (a.empty()) return {};
  const int cols = static_cast<int>(a[0].size());
  std::vector<int> pivots = echelonize(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rational(0));
    v[free] = 1;
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Int>> integer_kernel_basis(std::vector<std::vector<Int>> a, int n) {
  // Column reduction a -> a * U with U unimodular; kernel basis = columns of
  // U over the zero columns of the reduced a.
  std::vector<std::vector<Int>> u(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  const int rows = static_cast<int>(a.size());
  for (auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("integer_kernel_basis: ragged matrix");

  auto col_axpy = [&](int dst, int src, const Int& q) {  // col_dst -= q * col_src
    for (int i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (int i = 0; i < n; ++i) u[i][dst] -= q * u[i][src];
  };
  auto col_swap = [&](int x, int y) {
    for (int i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (int i = 0; i < n; ++i) std::swap(u[i][x], u[i][y]);
  };

  int lead = 0;
  for (int r = 0; r < rows && lead < n; ++r) {
    // Euclidean-reduce row r across columns lead..n-1 until one nonzero left.
    while (true) {
      int jmin = -1;
      for (int j = lead; j < n; ++j) {
        if (a[r][j] == 0) continue;
        if (jmin < 0 || abs(a[r][j]) < abs(a[r][jmin])) jmin = j;
      }
      if (jmin < 0) break;  // row is zero on the active columns
      bool others = false;
      for (int j = lead; j < n; ++j) {
        if (j == jmin || a[r][j] == 0) continue;
        others = true;
        Int q = a[r][j] / a[r][jmin];  // truncated division leaves |remainder| < |pivot|
        if (q != 0) col_axpy(j, jmin, q);
      }
      if (!others) {
        col_swap(lead, jmin);
        ++lead;
        break;
      }
    }
  }
  std::vector<std::vector<Int>> basis;
  for (int j = lead; j < n; ++j) {
    bool zero = true;
    for (int i = 0; i < rows; ++i)
      if (a[i][j] != 0) { zero = false; break; }
    if (!zero) throw std::logic_error("integer_kernel_basis: reduction left a nonzero column");
    std::vector<Int> v(n);
    for (int i = 0; i < n; ++i) v[i] = u[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Int> primitive_integer_vector(const Vec& v) {
  Int lcm_den = 1;
  for (const auto& q : v) lcm_den = lcm(lcm_den, denominator(q));
  std::vector<Int> w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
    g = gcd(g, w[i]);
  }
  if (g > 1)
    for (auto& x : w) x /= g;
  return w;
}

}  // namespace dicer
