#pragma once

// Polytope representations and the exact small-dimension kernel: vertex
// and facet enumeration, volume, surface area, area measure. A Polytope
// value carries both representations and per-facet data, computed once at
// construction.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "isoperi/numkit.hpp"

namespace isoperi {

inline constexpr std::size_t kMaxEnumDim = 8;
inline constexpr std::size_t kMaxEnumHalfspaces = 256;
inline constexpr std::size_t kMaxHullDim = 6;
inline constexpr std::size_t kMaxHullVertices = 2048;

struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// {x : <x, normal_i> <= offset_i} with unit normals and positive offsets,
// bounded. Normals are rescaled to unit length on construction (offsets
// follow). Redundant halfspaces are allowed.
class HPolytope {
 public:
  HPolytope() = default;
  HPolytope(std::size_t dim, std::vector<Halfspace> hs);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return hs_.size(); }
  const std::vector<Halfspace>& halfspaces() const { return hs_; }
  const Halfspace& operator[](std::size_t i) const { return hs_[i]; }

 private:
  std::size_t dim_ = 0;
  std::vector<Halfspace> hs_;
};

// Extreme points of a full-dimensional polytope.
class VPolytope {
 public:
  VPolytope() = default;
  // Keeps only extreme points (after merging points closer than 1e-8 times
  // the set radius). Throws StructuralError if not full-dimensional.
  explicit VPolytope(std::vector<Vec> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return v_.size(); }
  const std::vector<Vec>& vertices() const { return v_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Vec> v_;
};

struct FacetData {
  Vec normal;
  double offset = 0.0;
  double measure = 0.0;
  std::vector<int> vertices;
  Vec centroid;
};

struct AreaMeasure {
  struct Atom {
    Vec normal;
    double weight = 0.0;
  };
  std::size_t dim = 0;
  std::vector<Atom> atoms;

  double total() const;
};

struct VolumeEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct VertexEnumeration {
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> incidence;  // per halfspace, tight vertex indices
  std::vector<bool> supporting;             // halfspace i is a facet
};

// Polar route: hull of {a_i / b_i} about an interior point.
VertexEnumeration vertex_enumeration(const HPolytope& h);
// Reference route: every n-subset of halfspaces solved as a linear system.
VertexEnumeration vertex_enumeration_subsets(const HPolytope& h);

class Polytope {
 public:
  Polytope() = default;
  static Polytope from_h(const HPolytope& h);
  static Polytope from_v(const VPolytope& v);
  static Polytope from_points(std::vector<Vec> points);
  // Halfspaces with arbitrary offsets (the origin need not be interior).
  static Polytope from_halfspaces(std::size_t dim, std::vector<Halfspace> hs);
  // Trusted assembly from known combinatorics, for families whose facets
  // are known in closed form (no dimension cap). Facet centroids default
  // to the vertex average of the facet.
  static Polytope assemble(std::size_t dim, std::vector<Vec> vertices, std::vector<FacetData> facets);

  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<FacetData>& facets() const { return facets_; }
  std::size_t facet_count() const { return facets_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }

  // Facet halfspaces; StructuralError unless the origin is interior.
  HPolytope hrep() const;
  VPolytope vrep() const;
  Vec vertex_centroid() const;
  // Mass centroid.
  const Vec& centroid() const { return centroid_; }
  bool origin_interior(double tol = 1e-12) const;
  bool contains(std::span<const double> x, double tol = 1e-12) const;
  bool origin_symmetric(double tol = 1e-9) const;

  double volume() const { return volume_; }
  double surface_area() const;
  double iq() const;
  AreaMeasure area_measure() const;

  Polytope translated(std::span<const double> t) const;

 private:
  static Polytope build(std::vector<Vec> extreme_points);
  void finish();

  std::size_t dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<FacetData> facets_;
  double volume_ = 0.0;
  Vec centroid_;
};

// Facets of conv(V) (the origin may lie anywhere).
std::vector<FacetData> facet_enumeration(const VPolytope& v);

double iq_from(double surface, double volume, std::size_t dim);

SymMatrix covariance(const AreaMeasure& s);

double inradius_origin(const HPolytope& h);
double inradius_origin(const Polytope& p);

// (n/h) vol^{1/n}; TangencyError unless every facet touches the inball.
double iq_circumscribed(const Polytope& p);

bool contains(const HPolytope& h, std::span<const double> x, double tol = 1e-12);

Polytope apply_map(const Polytope& p, const Matrix& m);
HPolytope apply_map(const HPolytope& h, const Matrix& m);

// Area measure of TK: atom (u, w) goes to (T^{-T}u / |T^{-T}u|, |det T| w |T^{-T}u|).
AreaMeasure pushforward_area_measure(const AreaMeasure& s, const Matrix& t);

struct Box {
  Vec lo, hi;
  double volume() const;
};

// Tight axis box by 2n linear programs.
Box bounding_box(const HPolytope& h);

// Exact volume of {x : <x, a_i> <= b_i} with arbitrary offsets, by
// recursion over facets down to polygons (no hull). Zero when the set is
// empty or flat; StructuralError when unbounded.
double volume_h(std::size_t dim, std::span<const Halfspace> hs);

// Center and radius of the largest inscribed ball.
struct Ball {
  Vec center;
  double radius = 0.0;
};
Ball chebyshev_ball(std::size_t dim, std::span<const Halfspace> hs);

// Whether the normals positively span R^n (no closed hemisphere holds them).
bool positively_spanning(std::size_t dim, std::span<const Vec> normals);

VolumeEstimate mc_volume(const HPolytope& h, std::size_t samples, std::uint64_t seed,
                         unsigned workers = 1);

}  // namespace isoperi
