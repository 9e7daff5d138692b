#pragma once

// Upper bounds on the first Dirichlet eigenvalue of a slab body from the
// product test function phi(x) = prod (1 - c_i <x, u_i>^2) and its
// Rayleigh quotient.

#include <cstdint>
#include <span>
#include <vector>

#include "isoperi/polytope.hpp"
#include "isoperi/positions.hpp"

namespace isoperi {

struct TestFunction {
  Vec c;
  std::vector<Vec> u;
};

TestFunction test_function(const BLDecomposition& d);
// For a slab body {|<x, y_i>| <= 1}: c_i = |y_i|^2, u_i = y_i / |y_i|.
TestFunction test_function(std::span<const Vec> y);

double phi_eval(const TestFunction& tf, std::span<const double> x);
Vec phi_grad(const TestFunction& tf, std::span<const double> x);

struct RayleighBound {
  double lambda_bound = 0.0;
  double halfwidth = 0.0;  // 4 sigma, zero on the quadrature path
  double numerator = 0.0;  // integral of |grad phi|^2
  double denominator = 0.0;  // integral of phi^2
  bool exact = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultSamples = 1000000;

// Gauss quadrature (exact for these polynomials) at n <= 2, shared-sample
// Monte Carlo over the bounding box above.
RayleighBound rayleigh_bound(const HPolytope& body, const TestFunction& tf, std::size_t samples = kDefaultSamples,
                             std::uint64_t seed = 1, unsigned workers = 1);

// sum pi^2 / s_i^2
double box_lambda_reference(std::span<const double> sides);

struct ScalingCheck {
  double s = 1.0;
  double bound = 0.0;         // on K
  double scaled_bound = 0.0;  // on sK
  double ratio = 0.0;         // bound / scaled_bound, ideally s^2
  double tolerance = 0.0;
  bool exact = false;
  bool ok = false;
};

// K in slab form; the test function follows the scaling.
ScalingCheck scaling_law_check(const HPolytope& k, double s, std::size_t samples = kDefaultSamples,
                               std::uint64_t seed = 1, unsigned workers = 1);

struct SpectralCertificate {
  std::size_t n = 0;
  std::size_t m = 0;
  double lambda_bound = 0.0;
  double halfwidth = 0.0;
  double five_m = 0.0;
  double vol_bound_lhs = 0.0;      // vol(BK)^{1/n}
  double vol_bound_product = 0.0;  // prod (2/sqrt(c_i))^{c_i/n}
  double vol_bound_rhs = 0.0;      // 2 sqrt(m/n)
  double volume_bound_slack = 0.0;
  double vol_halfwidth = 0.0;
  double identity_residual = 0.0;
  double weight_sum = 0.0;
  bool exact = false;         // quadrature path
  bool volume_exact = false;  // exact volume
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool passed = false;
};

// K origin-symmetric with 2m facets, in any H form with paired offsets.
SpectralCertificate spectral_certificate(const HPolytope& k, std::size_t samples = kDefaultSamples,
                                         std::uint64_t seed = 1, unsigned workers = 1);

}  // namespace isoperi
