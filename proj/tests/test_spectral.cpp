#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isoperi/errors.hpp"
#include "isoperi/spectral.hpp"
#include "oracles.hpp"

using namespace isoperi;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

HPolytope slab_body(std::span<const Vec> y) {
  std::vector<Halfspace> hs;
  for (const Vec& v : y) {
    hs.push_back({v, 1.0});
    hs.push_back({-1.0 * v, 1.0});
  }
  return HPolytope(y[0].size(), hs);
}

std::vector<Vec> axes(std::size_t n, double half = 1.0) {
  std::vector<Vec> y;
  for (std::size_t j = 0; j < n; ++j) y.push_back((1.0 / half) * unit_vector(n, j));
  return y;
}

std::vector<Vec> random_slabs(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Vec> y;
    for (std::size_t i = 0; i < m; ++i) y.push_back(oracle::random_unit(n, rng));
    std::vector<Vec> both = y;
    for (const Vec& v : y) both.push_back(-1.0 * v);
    if (positively_spanning(n, both)) return y;
  }
}

// Midpoint grid over the bounding box with the indicator; independent of
// the quadrature and sampling paths.
double grid_rayleigh(const HPolytope& h, const TestFunction& tf, int steps) {
  const Box b = bounding_box(h);
  const double dx = (b.hi[0] - b.lo[0]) / steps, dy = (b.hi[1] - b.lo[1]) / steps;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const Vec x{b.lo[0] + (i + 0.5) * dx, b.lo[1] + (j + 0.5) * dy};
      if (!contains(h, x, 0.0)) continue;
      const double p = phi_eval(tf, x);
      const Vec g = phi_grad(tf, x);
      num += dot(g, g);
      den += p * p;
    }
  return num / den;
}

}  // namespace

TEST_CASE("phi examples") {
  const TestFunction one{{1.0}, {{1.0}}};
  for (double x : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
    CHECK(std::abs(phi_eval(one, Vec{x}) - (1.0 - x * x)) < 1e-15);
    CHECK(std::abs(phi_grad(one, Vec{x})[0] + 2.0 * x) < 1e-15);
  }
  const TestFunction sq = test_function(axes(2));
  CHECK(phi_eval(sq, Vec{0.0, 0.0}) == 1.0);
  CHECK(norm(phi_grad(sq, Vec{0.0, 0.0})) == 0.0);
  CHECK(phi_eval(sq, Vec{1.0, 0.3}) == 0.0);
}

TEST_CASE("phi gradient against central differences") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (std::size_t n = 1; n <= 4; ++n) {
    const TestFunction tf = test_function(random_slabs(n, n + 3, rng));
    for (int t = 0; t < 5; ++t) {
      Vec x(n);
      for (double& v : x) v = u(rng);
      const Vec g = phi_grad(tf, x);
      for (std::size_t k = 0; k < n; ++k) {
        const double h = 1e-6;
        Vec a = x, b = x;
        a[k] += h;
        b[k] -= h;
        CHECK(std::abs((phi_eval(tf, a) - phi_eval(tf, b)) / (2 * h) - g[k]) < 1e-8);
      }
    }
  }
}

TEST_CASE("quadrature anchors") {
  const std::vector<Vec> y1 = axes(1), y2 = axes(2);
  const RayleighBound a = rayleigh_bound(slab_body(y1), test_function(y1));
  CHECK(a.exact);
  CHECK(std::abs(a.lambda_bound - 2.5) < 1e-14);
  CHECK(std::abs(a.numerator - 8.0 / 3.0) < 1e-14);
  CHECK(std::abs(a.denominator - 16.0 / 15.0) < 1e-14);
  CHECK(a.lambda_bound > kPi2 / 4.0);
  CHECK(a.lambda_bound <= 5.0);

  const RayleighBound b = rayleigh_bound(slab_body(y2), test_function(y2));
  CHECK(b.exact);
  CHECK(std::abs(b.lambda_bound - 5.0) < 1e-14);
  CHECK(b.lambda_bound > kPi2 / 2.0);
  CHECK(b.lambda_bound <= 10.0);

  const RayleighBound b2 = rayleigh_bound(slab_body(y2), test_function(y2), 10, 999);
  CHECK(b2.lambda_bound == b.lambda_bound);
}

TEST_CASE("quadrature on rectangles matches the product formula") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> side(0.3, 3.0);
  for (int t = 0; t < 10; ++t) {
    const double a = side(rng), b = side(rng);
    const Matrix q = oracle::random_rotation(2, rng);
    const std::vector<Vec> y{(1.0 / a) * q.column(0), (1.0 / b) * q.column(1)};
    const RayleighBound r = rayleigh_bound(slab_body(y), test_function(y));
    const double expect = 2.5 / (a * a) + 2.5 / (b * b);
    CHECK(std::abs(r.lambda_bound - expect) < 1e-12 * expect);
    const double sides[2] = {2.0 * a, 2.0 * b};
    CHECK(r.lambda_bound >= box_lambda_reference(sides));
  }
}

TEST_CASE("quadrature against a midpoint grid") {
  std::mt19937_64 rng(7);
  for (std::size_t m = 3; m <= 6; ++m) {
    const std::vector<Vec> y = random_slabs(2, m, rng);
    const HPolytope h = slab_body(y);
    const RayleighBound r = rayleigh_bound(h, test_function(y));
    CHECK(std::abs(grid_rayleigh(h, test_function(y), 1500) - r.lambda_bound) < 2e-3 * r.lambda_bound);
  }
}

TEST_CASE("box reference") {
  const double one[1] = {2.0};
  CHECK(std::abs(box_lambda_reference(one) - kPi2 / 4.0) < 1e-15);
  const double two[2] = {2.0, 2.0};
  CHECK(std::abs(box_lambda_reference(two) - kPi2 / 2.0) < 1e-15);
  const double mixed[2] = {2.0, 4.0};
  CHECK(std::abs(box_lambda_reference(mixed) - (kPi2 / 4.0 + kPi2 / 16.0)) < 1e-15);
  const double bad[1] = {0.0};
  CHECK_THROWS_AS(box_lambda_reference(bad), SpecError);
}

TEST_CASE("monte carlo path") {
  const std::vector<Vec> y = axes(3);
  const HPolytope cube = slab_body(y);
  const RayleighBound r = rayleigh_bound(cube, test_function(y), 400000, 11);
  CHECK_FALSE(r.exact);
  CHECK(r.halfwidth > 0.0);
  CHECK(std::abs(r.lambda_bound - 7.5) <= r.halfwidth);
  const RayleighBound w = rayleigh_bound(cube, test_function(y), 400000, 11, 3);
  CHECK(w.lambda_bound == r.lambda_bound);
  CHECK(w.halfwidth == r.halfwidth);
  CHECK_THROWS_AS(rayleigh_bound(cube, test_function(y), 0, 1), SamplingError);

  // Within 4 sigma across seeds on a stretched box.
  const std::vector<Vec> z{{0.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}};
  const double expect = 2.5 * (0.25 + 1.0 + 4.0);
  int misses = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RayleighBound s = rayleigh_bound(slab_body(z), test_function(z), 100000, seed);
    if (std::abs(s.lambda_bound - expect) > s.halfwidth) ++misses;
  }
  CHECK(misses == 0);
}

TEST_CASE("scaling law") {
  for (double s : {0.5, 2.0, 3.0}) {
    const ScalingCheck a = scaling_law_check(slab_body(axes(1)), s);
    CHECK(a.exact);
    CHECK(a.ok);
    CHECK(std::abs(a.ratio - s * s) < 1e-12 * s * s);
    const ScalingCheck b = scaling_law_check(slab_body(axes(2)), s);
    CHECK(b.ok);
    CHECK(std::abs(b.ratio - s * s) < 1e-12 * s * s);
  }
  const ScalingCheck i = scaling_law_check(slab_body(axes(1)), 2.0);
  CHECK(std::abs(i.scaled_bound - 5.0 / 8.0) < 1e-14);

  std::mt19937_64 rng(3);
  const ScalingCheck r = scaling_law_check(slab_body(random_slabs(3, 5, rng)), 1.0, 100000, 4);
  CHECK_FALSE(r.exact);
  CHECK(r.ratio == 1.0);
  CHECK(r.ok);
  const ScalingCheck r2 = scaling_law_check(slab_body(random_slabs(3, 5, rng)), 2.0, 100000, 4);
  CHECK(r2.ok);
}

TEST_CASE("spectral certificate") {
  const SpectralCertificate c1 = spectral_certificate(slab_body(axes(1)));
  CHECK(c1.passed);
  CHECK(std::abs(c1.lambda_bound - 2.5) < 1e-14);
  CHECK(c1.five_m == 5.0);
  const SpectralCertificate c2 = spectral_certificate(slab_body(axes(2, 3.0)));
  CHECK(c2.passed);
  CHECK(std::abs(c2.lambda_bound - 5.0) < 1e-13);
  CHECK(std::abs(c2.vol_bound_lhs - 2.0) < 1e-12);
  CHECK(c2.identity_residual < 1e-12);

  const Vec hex[3] = {{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}, {-0.5, std::sqrt(3.0) / 2.0}};
  const SpectralCertificate h = spectral_certificate(slab_body(hex));
  CHECK(h.passed);
  CHECK(h.m == 3);
  CHECK(h.lambda_bound < 15.0);
  CHECK(h.volume_bound_slack > 0.0);

  std::mt19937_64 rng(10);
  for (int t = 0; t < 5; ++t) {
    const SpectralCertificate r = spectral_certificate(slab_body(random_slabs(3, 5, rng)), 200000, 1 + t);
    CHECK(r.passed);
    CHECK(r.lambda_bound + r.halfwidth <= 25.0);
    CHECK(r.volume_exact);
  }

  const HPolytope lopsided(2, {{Vec{1.0, 0.0}, 1.0}, {Vec{-1.0, 0.0}, 2.0}, {Vec{0.0, 1.0}, 1.0}, {Vec{0.0, -1.0}, 1.0}});
  CHECK_THROWS_AS(spectral_certificate(lopsided), StructuralError);
}
