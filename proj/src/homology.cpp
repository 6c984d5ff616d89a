#include "dicer/homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dicer {

FieldSpec parse_field(const std::string& text) {
  if (text == "q" || text == "Q") return {};
  if (text.rfind("gf:", 0) == 0) {
    long p = 0;
    try {
      size_t used = 0;
      p = std::stol(text.substr(3), &used);
      if (used != text.size() - 3) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("cannot read field characteristic from '" + text + "'");
    }
    if (p < 2) throw std::invalid_argument("field characteristic must be a prime");
    if (p > 2147483647L) throw std::invalid_argument("field characteristic too large");
    for (long d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                    " is not prime");
      }
    }
    return {false, p};
  }
  throw std::invalid_argument("unknown field '" + text + "', expected q or gf:P");
}

std::string to_string(const FieldSpec& f) {
  return f.rational ? "q" : "gf:" + std::to_string(f.p);
}

SimplicialComplex order_complex(const std::vector<std::vector<int>>& facets_of) {
  const int n = static_cast<int>(facets_of.size());
  // Strict order as downward reachability through the covering lists.
  std::vector<std::vector<char>> less(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) {
    std::vector<int> stack = {v};
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int u : facets_of[w]) {
        if (!less[u][v]) {
          less[u][v] = 1;  // u < v
          stack.push_back(u);
        }
      }
    }
  }

  SimplicialComplex k;
  k.vertices = n;
  k.faces.push_back({});
  // Chains grown by appending ever larger elements are produced once each.
  std::vector<std::vector<int>> frontier;
  for (int v = 0; v < n; ++v) frontier.push_back({v});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& chain : frontier) {
      k.faces.push_back(chain);
      for (int w = 0; w < n; ++w) {
        if (less[chain.back()][w]) {
          auto longer = chain;
          longer.push_back(w);
          next.push_back(std::move(longer));
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& f : k.faces) std::sort(f.begin(), f.end());
  std::sort(k.faces.begin(), k.faces.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return k;
}

bool ReducedHomology::trivial() const {
  for (long d : dims) {
    if (d != 0) return false;
  }
  return true;
}

long ReducedHomology::at(int degree) const {
  int idx = degree + 1;
  if (idx < 0 || idx >= static_cast<int>(dims.size())) return 0;
  return dims[idx];
}

namespace {

struct RationalField {
  using E = Rational;
  static E zero() { return 0; }
  static bool is_zero(const E& a) { return a == 0; }
  static E neg_quot(const E& a, const E& b) { return -a / b; }  // -a/b
  static E mul_add(const E& a, const E& s, const E& b) { return a + s * b; }
};

struct PrimeField {
  long p;
  using E = long;
  E zero() const { return 0; }
  bool is_zero(const E& a) const { return a == 0; }
  E inv(E a) const {
    // extended euclid, p prime and a nonzero mod p
    long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      long q = r / newr;
      t -= q * newt;
      std::swap(t, newt);
      r -= q * newr;
      std::swap(r, newr);
    }
    return ((t % p) + p) % p;
  }
  E neg_quot(const E& a, const E& b) const { return (p - a) % p * inv(b) % p; }
  E mul_add(const E& a, const E& s, const E& b) const { return (a + s * b % p) % p; }
};

// Sparse column: (row, value) sorted by row, values nonzero.
template <class F>
using Column = std::vector<std::pair<int, typename F::E>>;

template <class F>
Column<F> add_scaled(const Column<F>& a, const typename F::E& s, const Column<F>& b,
                     const F& field) {
  Column<F> out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto v = field.mul_add(field.zero(), s, b[j].second);
      if (!field.is_zero(v)) out.push_back({b[j].first, v});
      ++j;
    } else {
      auto v = field.mul_add(a[i].second, s, b[j].second);
      if (!field.is_zero(v)) out.push_back({a[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
long matrix_rank(std::vector<Column<F>> cols, const F& field) {
  std::map<int, size_t> pivot_of_row;  // lowest row -> reduced column
  std::vector<Column<F>> reduced;
  long rank = 0;
  for (auto& col : cols) {
    while (!col.empty()) {
      int low = col.back().first;
      auto it = pivot_of_row.find(low);
      if (it == pivot_of_row.end()) break;
      const auto& other = reduced[it->second];
      auto s = field.neg_quot(col.back().second, other.back().second);
      col = add_scaled(col, s, other, field);
    }
    if (!col.empty()) {
      pivot_of_row[col.back().first] = reduced.size();
      reduced.push_back(std::move(col));
      ++rank;
    }
  }
  return rank;
}

// Removes free pairs (f, c): f nonempty with a single immediate coface c
// that is itself maximal. Collapses preserve the homotopy type.
void collapse(std::vector<std::vector<int>>& faces) {
  const int n = static_cast<int>(faces.size());
  std::map<std::vector<int>, int> id;
  for (int i = 0; i < n; ++i) id[faces[i]] = i;

  std::vector<std::vector<int>> cofaces(n);
  for (int i = 0; i < n; ++i) {
    if (faces[i].empty()) continue;
    for (size_t k = 0; k < faces[i].size(); ++k) {
      auto facet = faces[i];
      facet.erase(facet.begin() + k);
      auto it = id.find(facet);
      if (it == id.end()) throw std::invalid_argument("faces are not closed under facets");
      cofaces[it->second].push_back(i);
    }
  }
  std::vector<int> icof(n, 0);
  for (int i = 0; i < n; ++i) icof[i] = static_cast<int>(cofaces[i].size());
  std::vector<char> present(n, 1);

  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    if (!faces[i].empty() && icof[i] == 1) queue.push_back(i);
  }
  auto drop = [&](int v, std::vector<int>& requeue) {
    present[v] = 0;
    if (faces[v].empty()) return;
    for (size_t k = 0; k < faces[v].size(); ++k) {
      auto facet = faces[v];
      facet.erase(facet.begin() + k);
      int g = id.at(facet);
      if (!present[g]) continue;
      if (--icof[g] == 1 && !faces[g].empty()) requeue.push_back(g);
      if (icof[g] == 0) {
        // g became maximal; its facets may have become free
        for (size_t t = 0; t < faces[g].size(); ++t) {
          auto sub = faces[g];
          sub.erase(sub.begin() + t);
          int h = id.at(sub);
          if (present[h] && !faces[h].empty() && icof[h] == 1) requeue.push_back(h);
        }
      }
    }
  };
  while (!queue.empty()) {
    int f = queue.back();
    queue.pop_back();
    if (!present[f] || icof[f] != 1) continue;
    int c = -1;
    for (int cand : cofaces[f]) {
      if (present[cand]) c = cand;
    }
    if (c < 0 || icof[c] != 0) continue;
    std::vector<int> requeue;
    present[f] = present[c] = 0;
    drop(c, requeue);
    drop(f, requeue);
    for (int g : requeue) queue.push_back(g);
  }

  std::vector<std::vector<int>> kept;
  for (int i = 0; i < n; ++i) {
    if (present[i]) kept.push_back(std::move(faces[i]));
  }
  faces = std::move(kept);
}

template <class F>
ReducedHomology homology_over(const std::vector<std::vector<int>>& faces, const F& field,
                              int top) {
  // faces grouped by size; boundary of a size-s face hits its s facets.
  std::vector<std::vector<const std::vector<int>*>> by_size(top + 2);
  for (const auto& f : faces) by_size[f.size()].push_back(&f);
  std::vector<std::map<std::vector<int>, int>> idx(top + 2);
  for (int s = 0; s <= top + 1; ++s) {
    for (size_t i = 0; i < by_size[s].size(); ++i) idx[s][*by_size[s][i]] = static_cast<int>(i);
  }

  std::vector<long> ranks(top + 3, 0);  // ranks[s] = rank of boundary C_s -> C_{s-1}
  for (int s = 1; s <= top + 1; ++s) {
    std::vector<Column<F>> cols;
    cols.reserve(by_size[s].size());
    for (const auto* fp : by_size[s]) {
      Column<F> col;
      for (size_t k = 0; k < fp->size(); ++k) {
        auto facet = *fp;
        facet.erase(facet.begin() + k);
        auto it = idx[s - 1].find(facet);
        if (it == idx[s - 1].end()) {
          throw std::invalid_argument("faces are not closed under facets");
        }
        typename F::E v = (k % 2 == 0) ? typename F::E(1)
                                       : field.neg_quot(typename F::E(1), typename F::E(1));
        col.push_back({it->second, v});
      }
      std::sort(col.begin(), col.end());
      cols.push_back(std::move(col));
    }
    ranks[s] = matrix_rank(std::move(cols), field);
  }

  ReducedHomology h;
  h.dims.assign(top + 2, 0);
  for (int s = 0; s <= top + 1; ++s) {
    h.dims[s] = static_cast<long>(by_size[s].size()) - ranks[s] - ranks[s + 1];
  }
  while (h.dims.size() > 1 && h.dims.back() == 0) h.dims.pop_back();
  return h;
}

}  // namespace

ReducedHomology reduced_homology(const SimplicialComplex& k, const FieldSpec& field) {
  for (const auto& f : k.faces) {
    if (!std::is_sorted(f.begin(), f.end()) ||
        std::adjacent_find(f.begin(), f.end()) != f.end()) {
      throw std::invalid_argument("face vertex lists must be sorted and duplicate free");
    }
    if (!f.empty() && (f.front() < 0 || f.back() >= k.vertices)) {
      throw std::invalid_argument("face vertex out of range");
    }
  }
  if (k.faces.empty()) return {};  // void complex

  auto faces = k.faces;
  collapse(faces);
  int top = 0;
  for (const auto& f : faces) top = std::max(top, static_cast<int>(f.size()) - 1);
  if (field.rational) {
    return homology_over(faces, RationalField{}, top);
  }
  return homology_over(faces, PrimeField{field.p}, top);
}

}  // namespace dicer
