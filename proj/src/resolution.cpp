#include "dicer/resolution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "dicer/diced.hpp"

namespace dicer {

MonomialIdeal::MonomialIdeal(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i != j && gens[j].divides(gens[i])) redundant = true;
    }
    if (!redundant) generators.push_back(gens[i]);
  }
}

int MonomialIdeal::vars() const {
  return generators.empty() ? 0 : generators.front().vars();
}

bool MonomialIdeal::contains(const Monomial& m) const {
  for (const auto& g : generators) {
    if (g.divides(m)) return true;
  }
  return false;
}

MonomialIdeal ideal_of_polytope(const Polytope& p) {
  auto report = is_diced(p);
  if (!report.diced) {
    throw std::invalid_argument("ideal is defined for diced polytopes only; vertex " +
                                to_string(*report.witness) + " is not integral");
  }
  std::vector<Monomial> gens;
  for (const Point& q : lattice_points(p)) gens.push_back(monomial_from_point(q));
  return MonomialIdeal(std::move(gens));
}

std::vector<Monomial> lcm_closure(const std::vector<Monomial>& gens) {
  constexpr size_t kGuard = 20000;
  std::set<Monomial> closure(gens.begin(), gens.end());
  std::vector<Monomial> fresh(closure.begin(), closure.end());
  while (!fresh.empty()) {
    std::vector<Monomial> added;
    for (const auto& a : fresh) {
      for (const auto& b : closure) {
        Monomial c = lcm(a, b);
        if (closure.insert(c).second) added.push_back(std::move(c));
        if (closure.size() > kGuard) {
          throw std::runtime_error("lcm closure exceeds the guard size");
        }
      }
    }
    fresh = std::move(added);
  }
  return {closure.begin(), closure.end()};
}

namespace {

// Order complex of the subcomplex on the given cells; restrictions are
// closed under taking faces, so the covering lists restrict cleanly.
SimplicialComplex restricted_order_complex(const PolyComplex& x, const std::vector<int>& cells) {
  std::map<int, int> local;
  for (size_t i = 0; i < cells.size(); ++i) local[cells[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> covers(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    for (int f : x.facets_of[cells[i]]) {
      auto it = local.find(f);
      if (it == local.end()) {
        throw std::logic_error("restriction is not closed under faces");
      }
      covers[i].push_back(it->second);
    }
  }
  return order_complex(covers);
}

}  // namespace

ResolutionCheck verify_cellular_resolution(const PolyComplex& x, const MonomialIdeal& ideal,
                                           const FieldSpec& field) {
  if (!x.labeled()) throw std::invalid_argument("complex has no vertex labels");
  if (!(MonomialIdeal(x.vertex_labels) == ideal)) {
    throw std::invalid_argument("vertex labels do not generate the ideal");
  }

  ResolutionCheck check;
  check.resolves = true;
  for (const Monomial& m : lcm_closure(x.vertex_labels)) {
    std::vector<int> cells = restriction_cells(x, m);
    if (cells.empty()) continue;
    ReducedHomology h = reduced_homology(restricted_order_complex(x, cells), field);
    if (!h.trivial()) {
      check.resolves = false;
      check.failures.push_back({m, std::move(h)});
    }
  }
  std::sort(check.failures.begin(), check.failures.end(),
            [](const ResolutionFailure& a, const ResolutionFailure& b) {
              return a.degree < b.degree;
            });
  return check;
}

MinimalityReport is_minimal(const PolyComplex& x) {
  if (!x.labeled()) throw std::invalid_argument("complex has no vertex labels");
  MinimalityReport rep;
  auto labels = cell_labels(x);
  for (size_t lo = 0; lo < x.cells.size(); ++lo) {
    for (size_t hi = 0; hi < x.cells.size(); ++hi) {
      if (lo == hi || !(labels[lo] == labels[hi])) continue;
      const auto& a = x.cells[lo].vertex_ids;
      const auto& b = x.cells[hi].vertex_ids;
      if (a.size() >= b.size()) continue;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        rep.witnesses.push_back({static_cast<int>(lo), static_cast<int>(hi)});
      }
    }
  }
  std::sort(rep.witnesses.begin(), rep.witnesses.end());
  rep.minimal = rep.witnesses.empty();
  return rep;
}

std::vector<long> BettiTable::totals() const {
  std::vector<long> t;
  for (const auto& [key, rank] : entries) {
    if (static_cast<int>(t.size()) <= key.first) t.resize(key.first + 1, 0);
    t[key.first] += rank;
  }
  return t;
}

BettiTable betti_table(const PolyComplex& x) {
  auto rep = is_minimal(x);
  if (!rep.minimal) {
    throw std::invalid_argument("complex is not a minimal resolution; cells " +
                                describe_cell(x, rep.witnesses.front().first) + " and " +
                                describe_cell(x, rep.witnesses.front().second) +
                                " share a label");
  }
  BettiTable table;
  auto labels = cell_labels(x);
  for (size_t c = 0; c < x.cells.size(); ++c) {
    table.entries[{x.cells[c].dim, labels[c]}] += 1;
  }
  return table;
}

BettiTable koszul_betti_oracle(const MonomialIdeal& ideal, const FieldSpec& field) {
  if (ideal.generators.size() > 12) {
    throw std::invalid_argument("oracle supports at most 12 generators");
  }
  if (ideal.generators.empty()) return {};
  const int n = ideal.vars();
  if (n > 16) throw std::invalid_argument("oracle supports at most 16 variables");

  // Candidate multidegrees: lcms of generator subsets.
  std::set<Monomial> degrees;
  const size_t r = ideal.generators.size();
  for (size_t mask = 1; mask < (size_t{1} << r); ++mask) {
    Monomial m{std::vector<long>(n, 0)};
    for (size_t i = 0; i < r; ++i) {
      if (mask & (size_t{1} << i)) m = lcm(m, ideal.generators[i]);
    }
    degrees.insert(std::move(m));
  }

  BettiTable table;
  for (const Monomial& m : degrees) {
    // Simplicial complex of coordinate subsets that can be peeled off m
    // while staying in the ideal.
    SimplicialComplex k;
    k.vertices = n;
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
      std::vector<long> e = m.exponents;
      std::vector<int> face;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (mask & (size_t{1} << i)) {
          face.push_back(i);
          if (--e[i] < 0) ok = false;
        }
      }
      if (ok && ideal.contains(Monomial{e})) k.faces.push_back(std::move(face));
    }
    std::sort(k.faces.begin(), k.faces.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    ReducedHomology h = reduced_homology(k, field);
    for (int i = 0; i <= n; ++i) {
      long rank = h.at(i - 1);
      if (rank > 0) table.entries[{i, m}] = rank;
    }
  }
  return table;
}

}  // namespace dicer
