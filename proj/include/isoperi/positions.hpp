#pragma once

// Volume-preserving repositioning: the minimal surface area position via
// the area-measure covariance criterion, the Schatten-1 check, and the
// slab-body decomposition of the identity.

#include <cstdint>
#include <span>
#include <vector>

#include "isoperi/polytope.hpp"

namespace isoperi {

// Surface area of AK from the area measure of K:
// |det A| * sum_i w_i |A^{-T} u_i|.
double surface_area_of_image(const AreaMeasure& s, const Matrix& a);

// |Cov(s) n / tr Cov(s) - I|_max.
double isotropy_residual(const AreaMeasure& s);

struct PositionResult {
  Matrix a;  // det 1
  double iq_before = 0.0;
  double iq_after = 0.0;
  double isotropy_residual = 0.0;
  double schatten1_a = 0.0;
  int iterations = 0;
  int restarts = 0;
  bool certified = false;  // residual < tol
};

struct PettyOptions {
  double tol = 1e-8;
  int max_iter = 500;
  int restarts = 20;
  std::uint64_t seed = 1;
};

// DegeneracyError if the area measure does not span R^n.
PositionResult petty_minimize(const Polytope& k, const PettyOptions& opt = {});

struct SchattenCheck {
  double lhs = 0.0;  // |A|_S1
  double rhs = 0.0;  // n iq(K) / iq(AK)
  double slack = 0.0;
  bool ok = false;   // lhs <= rhs + 1e-8
};

SchattenCheck schatten_bound_check(const Polytope& k, const PositionResult& r);

struct BLDecomposition {
  SymMatrix b;           // (Y Y^T)^{1/2}
  Vec c;                 // weights, sum n
  std::vector<Vec> u;    // unit directions
  double identity_residual = 0.0;  // |sum c_i u_i u_i^T - I|_max
  double weight_sum = 0.0;
  std::vector<std::size_t> near_degenerate;  // c_i < 1e-12
};

struct BLTransform {
  BLDecomposition decomposition;
  HPolytope body;  // BK = {|<x, u_i>| <= 1 / sqrt(c_i)}
};

// Slab vectors y_i of an origin-symmetric body {max |<x, y_i>| <= 1}.
// StructuralError if the halfspaces do not pair up as +-.
std::vector<Vec> slab_vectors(const HPolytope& h);

// DegeneracyError if the y_i do not span R^n.
BLTransform bl_transform(std::size_t n, std::span<const Vec> y);
BLTransform bl_transform(const HPolytope& h);

struct VolumeBoundCheck {
  double lhs = 0.0;            // vol(BK)^{1/n}
  double product_bound = 0.0;  // prod (2/sqrt(c_i))^{c_i/n}
  double weak_bound = 0.0;     // 2 sqrt(m/n)
  double halfwidth = 0.0;      // on lhs, Monte Carlo only
  bool exact = true;
  bool ok = false;
};

VolumeBoundCheck bl_volume_bound_check(const HPolytope& bk, const BLDecomposition& d,
                                       std::size_t samples = 1000000, std::uint64_t seed = 1,
                                       unsigned workers = 1);

}  // namespace isoperi
