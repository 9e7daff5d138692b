#pragma once

// Exact-in-floating-point convex hulls in low dimension by ridge pivoting
// (gift wrapping). Each facet's ridges come from the hull of the facet
// inside its own hyperplane, so the same recursion also yields facet
// measures: a k-face is the union of cones from its centroid over its
// (k-1)-faces.

#include <span>
#include <vector>

#include "isoperi/numkit.hpp"

namespace isoperi::hull {

// Relative tolerance for coplanarity tests; absolute tolerance is this
// times the point-set radius.
inline constexpr double kRelTol = 1e-9;

struct Facet {
  Vec normal;                // unit, outward
  double offset = 0.0;       // <x, normal> = offset on the facet
  std::vector<int> vertices; // indices into the input point set
  double measure = 0.0;      // (k-1)-volume, when requested
  Vec centroid;              // mass centroid of the facet, when requested
};

struct Hull {
  std::size_t dim = 0;
  std::vector<Facet> facets;
  std::vector<int> extreme;  // indices of extreme points, ascending
};

Vec centroid(std::span<const Vec> pts);
double radius_about(std::span<const Vec> pts, const Vec& center);

// Orthonormal basis of the linear span of {p - pts[0]}.
std::vector<Vec> affine_basis(std::span<const Vec> pts, double tol);

// Orthonormal vectors completing `basis` to a basis of R^dim.
std::vector<Vec> orthonormal_complement(std::span<const Vec> basis, std::size_t dim);

// Facets of conv(pts). Points must span R^k (k = pts[0].size() >= 1);
// throws StructuralError otherwise.
Hull convex_hull(std::span<const Vec> pts, bool with_measures);

// k-volume of conv(pts) for full-dimensional pts in R^k (k >= 1).
double volume(std::span<const Vec> pts);

// (k-1)-measure of conv(pts) where all pts lie on a hyperplane with the
// given unit normal in R^k. Returns 1 when k == 1.
double face_measure(std::span<const Vec> pts, const Vec& normal);

}  // namespace isoperi::hull
