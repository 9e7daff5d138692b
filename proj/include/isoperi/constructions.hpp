#pragma once

// Polytope families: regular simplex, cross-polytope, cube, products,
// l1-sums, Lindelof bodies, facet/vertex padding, the extremal facet and
// vertex constructions, and central symmetrization.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "isoperi/polytope.hpp"

namespace isoperi {

struct ClosedForms {
  double volume = 0.0;
  double surface_area = 0.0;
  double iq = 0.0;
  std::optional<double> minimal_iq;
  std::optional<double> inradius;
  std::size_t facet_count = 0;
  std::size_t vertex_count = 0;
};

ClosedForms make_closed_forms(std::size_t dim, double volume, double surface, std::size_t facets,
                              std::size_t vertices);

struct Construction {
  Polytope body;
  ClosedForms forms;
};

// Centered, side 1. 1 <= n <= 10.
Construction simplex_regular(std::size_t n);
Construction cross_polytope(std::size_t n, double scale = 1.0);
Construction cube(std::size_t n, double scale = 1.0);

// Uniform scaling about the origin.
Construction scaled(const Construction& c, double s);

Construction cartesian_product(std::span<const Construction> factors, bool normalize_to_unit_volume);

struct L1SumSpec {
  std::vector<Construction> summands;  // each circumscribed about h_i B
};

struct L1SumHypotheses {
  bool tangent = false;       // every summand circumscribed about its inball
  bool symmetric = false;
  bool congruent_facets = false;
  bool isotropic = false;     // each summand already in minimal position
  bool h_matches_dim = false; // h_i = 1/sqrt(b_i)
  bool all() const { return tangent && symmetric && congruent_facets && isotropic && h_matches_dim; }
};

struct L1Sum {
  Construction result;
  L1SumHypotheses hypotheses;
  std::vector<std::size_t> dims;
  std::vector<double> inradii;
};

// SpecError when a summand is not circumscribed about a centered ball.
L1Sum l1_sum(const L1SumSpec& spec);

// Closed-form minimal iq of an l1-sum whose summands satisfy the
// hypotheses; partials are the summands' minimal iq values.
double l1_sum_minimal_iq(std::span<const std::size_t> dims, std::span<const double> partials);

// {x : max <x, u_i> <= 1}. StructuralError if the normals lie in a closed
// hemisphere.
Polytope lindelof_body(std::size_t dim, std::span<const Vec> normals);

struct Padding {
  Polytope body;
  double iq_shift = 0.0;    // |iq(result) - iq(input)|
  double delta_used = 0.0;  // last cut depth / offset
};

inline constexpr double kPadDefaultRel = 1e-3;
inline constexpr int kPadRetries = 20;

// Cuts vertices until the body has exactly `facets` facets. With delta
// unset a depth of 1e-3 * diameter is halved on failure up to 20 times; an
// explicit delta that cuts more than one vertex is a GeometryError.
Padding pad_facets(const Polytope& k, std::size_t facets, std::optional<double> delta = std::nullopt);

// Adds points just beyond facets until there are exactly `vertices`.
// `symmetric` adds +-p pairs (SpecError on an odd increment).
Padding pad_vertices(const Polytope& k, std::size_t vertices, bool symmetric,
                     std::optional<double> delta = std::nullopt);

struct ExtremalFacet {
  Construction result;
  enum class Branch { kSimplex, kCross, kProduct } branch = Branch::kSimplex;
  std::size_t m = 0, a = 0, r = 0, b = 0;
  double predicted_iq_bound = 0.0;  // 2n / sqrt(m) on the product branch
};

ExtremalFacet extremal_facet_polytope(std::size_t n, std::size_t phi);

struct ExtremalVertex {
  Construction result;  // exactly beta vertices
  Construction base;    // before padding; carries minimal_iq when proven
  bool cube_branch = false;
  std::size_t m = 0, a = 0, r = 0;
  double target_band = 0.0;  // sqrt(n log(beta/n))
};

ExtremalVertex extremal_vertex_polytope(std::size_t n, std::size_t beta);

struct Symmetrization {
  Vec x;              // K'' = (K - x/2) cap (x/2 - K)
  Polytope body;
  double volume_ratio = 0.0;  // vol(K'') / vol(K)
  bool exact = true;          // objective evaluated exactly (n <= 4)
};

Symmetrization central_symmetrize(const Polytope& k, std::uint64_t seed = 1);

// vol(K cap (x - K)), zero when the intersection has empty interior.
double overlap_volume(const Polytope& k, const Vec& x);

}  // namespace isoperi
