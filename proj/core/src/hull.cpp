#include "twopoint/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twopoint/errors.hpp"

namespace twopoint {
namespace {

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(cplx p, cplx s0, cplx s1) {
  const cplx d = s1 - s0;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - s0);
  double t = ((p - s0) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (s0 + t * d));
}

}  // namespace

double HullPolygon::distance(cplx p) const {
  if (vertices.empty()) {
    throw InvalidArgument("distance to an empty hull");
  }
  if (vertices.size() == 1) return std::abs(p - vertices.front());
  if (vertices.size() == 2) return segment_distance(p, vertices[0], vertices[1]);

  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  const size_t n = vertices.size();
  for (size_t i = 0; i < n; ++i) {
    const cplx v0 = vertices[i];
    const cplx v1 = vertices[(i + 1) % n];
    if (cross(v0, v1, p) < 0.0) inside = false;
    best = std::min(best, segment_distance(p, v0, v1));
  }
  return inside ? 0.0 : best;
}

HullPolygon convex_hull(std::span<const cplx> points) {
  if (points.empty()) {
    throw InvalidArgument("convex hull of an empty point set");
  }
  std::vector<cplx> pts(points.begin(), points.end());
  auto less = [](cplx x, cplx y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  HullPolygon hull;
  if (pts.size() == 1) {
    hull.vertices = pts;
    hull.degenerate = true;
    return hull;
  }

  std::vector<cplx> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);

  // Collinear input collapses to its two extreme points.
  if (h.size() <= 2) {
    hull.vertices = {pts.front(), pts.back()};
    hull.degenerate = true;
    return hull;
  }
  hull.vertices = std::move(h);
  return hull;
}

HullPolygon essential_range_hull(const BoundarySymbol& f) {
  return convex_hull(f.samples());
}

}  // namespace twopoint
