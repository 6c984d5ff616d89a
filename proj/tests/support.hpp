#pragma once

// Shared builders for the test suite.

#include <vector>

#include "dicer/geometry.hpp"
#include "dicer/monomial.hpp"

namespace dicer {

inline Point pt(const std::vector<long>& coords) {
  Point p;
  for (long c : coords) p.push_back(Rational(c));
  return p;
}

inline Polytope hull(const std::vector<std::vector<long>>& rows) {
  std::vector<Point> pts;
  for (const auto& r : rows) pts.push_back(pt(r));
  return convex_hull_vertices(pts);
}

inline Monomial mono(std::vector<long> exps) { return Monomial{std::move(exps)}; }

}  // namespace dicer
