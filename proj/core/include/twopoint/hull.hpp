#pragma once

#include <complex>
#include <span>
#include <vector>

#include "twopoint/symbols.hpp"

namespace twopoint {

/// Convex hull of a finite planar point set, vertices counterclockwise.
///
/// A degenerate hull is a single point (one vertex) or a segment (two
/// vertices); distance() then falls back to point / segment distance.
struct HullPolygon {
  std::vector<cplx> vertices;
  bool degenerate = false;

  /// Euclidean distance from p to the hull; 0 inside.
  [[nodiscard]] double distance(cplx p) const;
  [[nodiscard]] bool contains(cplx p, double tol = 0.0) const { return distance(p) <= tol; }
};

/// Monotone-chain hull. Output vertices are input points, no three collinear.
HullPolygon convex_hull(std::span<const cplx> points);

/// Hull of the sample set, a grid proxy for the closed convex hull of the
/// essential range.
HullPolygon essential_range_hull(const BoundarySymbol& f);

}  // namespace twopoint
