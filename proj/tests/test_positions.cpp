#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "isoperi/constructions.hpp"
#include "isoperi/errors.hpp"
#include "isoperi/positions.hpp"
#include "oracles.hpp"

using namespace isoperi;

namespace {

Matrix diag(std::initializer_list<double> d) {
  const Vec v(d);
  return Matrix::diagonal(v);
}

Polytope random_body(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Vec> pts(3 * n, Vec(n));
  for (auto& p : pts)
    for (double& x : p) x = g(rng);
  return Polytope::from_points(pts);
}

HPolytope slab_body(std::span<const Vec> y) {
  std::vector<Halfspace> hs;
  for (const Vec& v : y) {
    hs.push_back({v, 1.0});
    hs.push_back({-1.0 * v, 1.0});
  }
  return HPolytope(y[0].size(), hs);
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

}  // namespace

TEST_CASE("surface area of a linear image") {
  const Polytope sq = cube(2).body;
  const AreaMeasure s = sq.area_measure();
  CHECK(std::abs(surface_area_of_image(s, Matrix::identity(2)) - 8.0) < 1e-12);
  std::mt19937_64 rng(4);
  CHECK(std::abs(surface_area_of_image(s, oracle::random_rotation(2, rng)) - 8.0) < 1e-12);
  CHECK(std::abs(surface_area_of_image(s, diag({2.0, 0.5})) - 10.0) < 1e-12);
  CHECK_THROWS_AS(surface_area_of_image(s, Matrix(2, 2)), SingularityError);

  for (std::size_t n = 2; n <= 4; ++n)
    for (int t = 0; t < 5; ++t) {
      const Polytope k = random_body(n, rng);
      const Matrix a = oracle::random_matrix(n, rng, 1.5);
      const double direct = apply_map(k, a).surface_area();
      CHECK(std::abs(surface_area_of_image(k.area_measure(), a) - direct) <= 1e-9 * direct);
    }
}

TEST_CASE("isotropy residual") {
  CHECK(isotropy_residual(cube(3).body.area_measure()) < 1e-15);
  CHECK(isotropy_residual(cross_polytope(3).body.area_measure()) < 1e-15);
  AreaMeasure one{2, {{Vec{1.0, 0.0}, 1.0}}};
  CHECK(std::abs(isotropy_residual(one) - 1.0) < 1e-15);
}

TEST_CASE("petty on isotropic bodies") {
  const PositionResult c = petty_minimize(cube(3).body);
  CHECK(c.iterations == 0);
  CHECK(max_abs_diff(c.a, Matrix::identity(3)) == 0.0);
  CHECK(c.certified);
  CHECK(std::abs(c.iq_after - 6.0) < 1e-12);

  for (std::size_t n : {2, 3}) {
    const Construction s = simplex_regular(n);
    const PositionResult r = petty_minimize(s.body);
    CHECK(r.isotropy_residual < 1e-8);
    CHECK(std::abs(r.iq_after - s.forms.iq) < 1e-6);
  }
}

TEST_CASE("petty recovers stretched cubes") {
  const Polytope k = apply_map(cube(2).body, diag({2.0, 0.5}));
  const PositionResult r = petty_minimize(k);
  CHECK(r.certified);
  CHECK(std::abs(r.iq_after - 4.0) < 1e-6);
  const Matrix ata = r.a.transposed() * r.a;
  CHECK(max_abs_diff(ata, diag({0.25, 4.0})) < 1e-6);
  const SchattenCheck sc = schatten_bound_check(k, r);
  CHECK(std::abs(sc.lhs - 2.5) < 1e-6);
  CHECK(std::abs(sc.rhs - 2.5) < 1e-6);
  CHECK(sc.ok);

  const Polytope k4 = apply_map(cube(2).body, diag({4.0, 0.25}));
  const PositionResult r4 = petty_minimize(k4);
  CHECK(std::abs(r4.iq_after - 4.0) < 1e-6);
  CHECK(max_abs_diff(r4.a.transposed() * r4.a, diag({1.0 / 16.0, 16.0})) < 1e-6);

  const Polytope k3 = apply_map(cube(3).body, diag({3.0, 0.5, 1.0 / 1.5}));
  const PositionResult r3 = petty_minimize(k3);
  CHECK(r3.certified);
  CHECK(std::abs(r3.iq_after - 6.0) < 1e-6);
  CHECK(std::abs(det(r3.a) - 1.0) < 1e-10);
  CHECK(schatten_bound_check(k3, r3).ok);

  const SchattenCheck eq = schatten_bound_check(cube(3).body, petty_minimize(cube(3).body));
  CHECK(std::abs(eq.lhs - 3.0) < 1e-12);
  CHECK(std::abs(eq.slack) < 1e-12);
}

TEST_CASE("petty: linear images of a minimal body return to its iq") {
  std::mt19937_64 rng(21);
  for (std::size_t n : {2, 3})
    for (int t = 0; t < 4; ++t) {
      const Construction s = simplex_regular(n);
      const Polytope k = apply_map(s.body, normalize_det_one(oracle::random_matrix(n, rng, 1.5)));
      const PositionResult r = petty_minimize(k);
      CHECK(r.certified);
      CHECK(std::abs(r.iq_after - s.forms.iq) < 1e-6);
      CHECK(r.iq_after <= r.iq_before + 1e-12);
      CHECK(std::abs(det(r.a) - 1.0) < 1e-10);
    }
}

TEST_CASE("petty on random bodies") {
  std::mt19937_64 rng(8);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int t = 0; t < 4; ++t) {
      const Polytope k = random_body(n, rng);
      const PositionResult r = petty_minimize(k);
      CHECK(r.certified);
      CHECK(r.iq_after <= r.iq_before + 1e-12);
      CHECK(std::abs(det(r.a) - 1.0) < 1e-10);
      CHECK(schatten_bound_check(k, r).ok);
      // The image has the same iq and is isotropic.
      const Polytope ak = apply_map(k, r.a);
      CHECK(std::abs(ak.iq() - r.iq_after) < 1e-9 * r.iq_after);
      CHECK(isotropy_residual(ak.area_measure()) < 1e-8);
      // Rotating the input does not move the minimum.
      const Polytope qk = apply_map(k, oracle::random_rotation(n, rng));
      CHECK(std::abs(petty_minimize(qk).iq_after - r.iq_after) < 1e-8);
    }
}

TEST_CASE("petty on l1-sum fixtures is already minimal") {
  for (std::size_t n = 3; n <= 5; ++n) {
    const ExtremalVertex e = extremal_vertex_polytope(n, 2 * n + 2);
    if (e.cube_branch) continue;
    const PositionResult r = petty_minimize(e.base.body);
    CHECK(r.certified);
    CHECK(max_abs_diff(r.a.transposed() * r.a, Matrix::identity(n)) < 1e-8);
    REQUIRE(e.base.forms.minimal_iq.has_value());
    CHECK(std::abs(r.iq_after - *e.base.forms.minimal_iq) < 1e-6);
  }
}

TEST_CASE("petty rejects a flat area measure") {
  std::vector<Vec> v{{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}};
  std::vector<FacetData> f{{Vec{1.0, 0.0}, 1.0, 2.0, {0, 1}, {}}, {Vec{-1.0, 0.0}, 1.0, 2.0, {2, 3}, {}}};
  const Polytope flat = Polytope::assemble(2, v, f);
  CHECK_THROWS_AS(petty_minimize(flat), DegeneracyError);
}

TEST_CASE("slab vectors") {
  const Vec y[3] = {{1.0, 0.0}, {0.0, 2.0}, {1.0, 1.0}};
  const HPolytope h = slab_body(y);
  const std::vector<Vec> back = slab_vectors(h);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(norm(back[i] - y[i]) < 1e-12);
  const HPolytope lopsided(2, {{Vec{1.0, 0.0}, 1.0}, {Vec{-1.0, 0.0}, 2.0}, {Vec{0.0, 1.0}, 1.0}, {Vec{0.0, -1.0}, 1.0}});
  CHECK_THROWS_AS(slab_vectors(lopsided), StructuralError);
}

TEST_CASE("bl_transform examples") {
  const Vec e[3] = {unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)};
  const BLTransform c = bl_transform(3, e);
  CHECK(max_abs_diff(c.decomposition.b.matrix(), Matrix::identity(3)) < 1e-14);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(c.decomposition.c[i] - 1.0) < 1e-14);
    CHECK(norm(c.decomposition.u[i] - e[i]) < 1e-14);
  }

  const Vec y[3] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  const BLTransform t = bl_transform(2, y);
  const Matrix yyt{{2.0, 1.0}, {1.0, 2.0}};
  const Matrix b = t.decomposition.b.matrix();
  CHECK(max_abs_diff(b * b, yyt) < 1e-13);
  CHECK(sym_eig(t.decomposition.b).values.back() > 0.0);
  // c_i = y_i^T (Y Y^T)^{-1} y_i, with the inverse by cofactors.
  const double dt = oracle::cofactor_det({{2.0, 1.0}, {1.0, 2.0}});
  const Matrix inv{{2.0 / dt, -1.0 / dt}, {-1.0 / dt, 2.0 / dt}};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(t.decomposition.c[i] - dot(y[i], inv * y[i])) < 1e-13);
  CHECK(std::abs(t.decomposition.weight_sum - 2.0) < 1e-12);
  CHECK(t.decomposition.identity_residual < 1e-12);

  const Vec line[2] = {{1.0, 1.0}, {2.0, 2.0}};
  CHECK_THROWS_AS(bl_transform(2, line), DegeneracyError);
}

TEST_CASE("bl_transform maps K onto BK") {
  std::mt19937_64 rng(12);
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = n; m <= n + 4; ++m) {
      const std::vector<Vec> y = random_slabs(n, m, rng);
      const HPolytope h = slab_body(y);
      const BLTransform t = bl_transform(h);
      CHECK(t.decomposition.identity_residual <= 1e-9);
      CHECK(std::abs(t.decomposition.weight_sum - static_cast<double>(n)) <= 1e-10);
      CHECK(t.decomposition.near_degenerate.empty());
      // BK is the image of K under B.
      const Polytope k = Polytope::from_h(h);
      const Polytope bk = Polytope::from_h(t.body);
      const Polytope img = apply_map(k, t.decomposition.b.matrix());
      CHECK(std::abs(bk.volume() - img.volume()) <= 1e-9 * img.volume());
      CHECK(std::abs(bk.surface_area() - img.surface_area()) <= 1e-9 * img.surface_area());
    }
}

TEST_CASE("bl volume bound") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Vec> e;
    for (std::size_t j = 0; j < n; ++j) e.push_back(unit_vector(n, j));
    const BLTransform t = bl_transform(n, e);
    const VolumeBoundCheck v = bl_volume_bound_check(t.body, t.decomposition);
    CHECK(v.exact);
    CHECK(v.ok);
    CHECK(std::abs(v.lhs - 2.0) < 1e-12);
    CHECK(std::abs(v.product_bound - 2.0) < 1e-12);
    CHECK(std::abs(v.weak_bound - 2.0) < 1e-12);
  }

  const Vec hex[3] = {{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}, {-0.5, std::sqrt(3.0) / 2.0}};
  const BLTransform t = bl_transform(2, hex);
  const VolumeBoundCheck v = bl_volume_bound_check(t.body, t.decomposition);
  CHECK(v.ok);
  CHECK(v.lhs < v.product_bound - 1e-3);
  CHECK(v.product_bound <= v.weak_bound + 1e-15);
  // Regular hexagon: c_i = 2/3, inradius sqrt(3/2), area 2 sqrt(3) r^2.
  CHECK(std::abs(v.lhs - std::sqrt(2.0 * std::sqrt(3.0) * 1.5)) < 1e-12);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Vec> y = random_slabs(3, 6, rng);
    const BLTransform r = bl_transform(slab_body(y));
    const VolumeBoundCheck c = bl_volume_bound_check(r.body, r.decomposition);
    CHECK(c.ok);
    CHECK(c.lhs <= c.weak_bound);
  }

  std::vector<Vec> e7;
  for (std::size_t j = 0; j < 7; ++j) e7.push_back(unit_vector(7, j));
  const BLTransform c7 = bl_transform(7, e7);
  const VolumeBoundCheck mc = bl_volume_bound_check(c7.body, c7.decomposition, 200000, 3);
  CHECK_FALSE(mc.exact);
  CHECK(mc.ok);
  // The sampling box is the body itself: every sample lands.
  CHECK(mc.halfwidth == 0.0);
  CHECK(std::abs(mc.lhs - 2.0) < 1e-12);

  e7.push_back((0.5 / std::sqrt(7.0)) * Vec(7, 1.0));
  const BLTransform d7 = bl_transform(7, e7);
  const VolumeBoundCheck cut = bl_volume_bound_check(d7.body, d7.decomposition, 200000, 3);
  CHECK(cut.ok);
  CHECK(cut.halfwidth > 0.0);
  CHECK(cut.lhs - cut.halfwidth <= cut.product_bound);
}

TEST_CASE("petty converges on padded extremal fixtures") {
  for (const auto& [n, beta] : {std::pair<std::size_t, std::size_t>{5, 20}, {5, 14}, {4, 12}, {4, 10}}) {
    const ExtremalVertex ev = extremal_vertex_polytope(n, beta);
    const PositionResult r = petty_minimize(ev.result.body);
    CHECK(r.certified);
    CHECK(r.iterations < 50);
    CHECK(r.iq_after <= r.iq_before + 1e-12);
    CHECK(std::abs(det(r.a) - 1.0) < 1e-10);
  }
}
