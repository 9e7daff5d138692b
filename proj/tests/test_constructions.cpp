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

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(b), 1e-300); }

// Recompute everything from the vertex set with the hull kernel.
Polytope rebuilt(const Polytope& p) { return Polytope::from_points(p.vertices()); }

double cross_iq(double n) { return 2.0 * std::pow(n, 1.5) / std::pow(std::tgamma(n + 1.0), 1.0 / n); }

double simplex_iq(double n) {
  return std::pow(n, 1.5) * std::pow(n + 1.0, 0.5 + 0.5 / n) / std::pow(std::tgamma(n + 1.0), 1.0 / n);
}

}  // namespace

TEST_CASE("regular simplex") {
  const Construction t = simplex_regular(2);
  CHECK(rel_close(t.forms.iq, 2.0 * std::pow(3.0, 0.75), 1e-12));
  CHECK(rel_close(simplex_regular(3).forms.volume, std::sqrt(2.0) / 12.0, 1e-12));
  const Construction s1 = simplex_regular(1);
  CHECK(rel_close(s1.body.volume(), 1.0, 1e-12));
  CHECK(rel_close(s1.forms.iq, 2.0, 1e-12));
  for (std::size_t n = 2; n <= 6; ++n) {
    const Construction c = simplex_regular(n);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) CHECK(rel_close(norm(c.body.vertices()[i] - c.body.vertices()[j]), 1.0, 1e-12));
    CHECK(norm(c.body.centroid()) < 1e-12);
    CHECK(rel_close(c.forms.iq, simplex_iq(static_cast<double>(n)), 1e-12));
    CHECK(rel_close(c.body.volume(), c.forms.volume, 1e-12));
    CHECK(rel_close(c.body.surface_area(), c.forms.surface_area, 1e-12));
    CHECK(rel_close(*c.forms.inradius, inradius_origin(c.body), 1e-12));
    std::vector<Vec> pts = c.body.vertices();
    CHECK(rel_close(c.forms.volume, oracle::simplex_volume(pts), 1e-12));
    if (n <= 5) {
      const Polytope r = rebuilt(c.body);
      CHECK(rel_close(r.volume(), c.forms.volume, 1e-10));
      CHECK(rel_close(r.surface_area(), c.forms.surface_area, 1e-10));
    }
    REQUIRE(c.forms.minimal_iq.has_value());
    CHECK(rel_close(*c.forms.minimal_iq, c.forms.iq, 1e-15));
  }
  CHECK(simplex_regular(10).forms.facet_count == 11);
  CHECK_THROWS_AS(simplex_regular(11), SpecError);
  CHECK_THROWS_AS(simplex_regular(0), SpecError);
}

TEST_CASE("cross-polytope and cube") {
  CHECK(rel_close(cross_polytope(2).forms.iq, 4.0, 1e-12));
  CHECK(rel_close(cross_polytope(3).forms.volume, 4.0 / 3.0, 1e-12));
  for (std::size_t n = 1; n <= 6; ++n) {
    const double nn = static_cast<double>(n);
    const Construction c = cross_polytope(n);
    const Construction q = cube(n);
    CHECK(c.body.vertex_count() == 2 * n);
    CHECK(c.body.facet_count() == (std::size_t{1} << n));
    CHECK(q.body.vertex_count() == (std::size_t{1} << n));
    CHECK(q.body.facet_count() == 2 * n);
    CHECK(rel_close(c.forms.volume, std::pow(2.0, nn) / std::tgamma(nn + 1.0), 1e-12));
    CHECK(rel_close(q.forms.volume, std::pow(2.0, nn), 1e-12));
    CHECK(rel_close(q.forms.iq, 2.0 * nn, 1e-12));
    CHECK(rel_close(c.forms.iq, cross_iq(nn), 1e-12));
    CHECK(rel_close(*c.forms.inradius, 1.0 / std::sqrt(nn), 1e-12));
    CHECK(rel_close(c.body.volume(), c.forms.volume, 1e-12));
    CHECK(rel_close(q.body.surface_area(), q.forms.surface_area, 1e-12));
    CHECK(rel_close(c.body.surface_area(), c.forms.surface_area, 1e-12));
    CHECK(c.forms.minimal_iq.has_value());
    CHECK(q.forms.minimal_iq.has_value());
    if (n >= 2 && n <= 5) {
      CHECK(rel_close(rebuilt(c.body).surface_area(), c.forms.surface_area, 1e-10));
      CHECK(rel_close(rebuilt(q.body).volume(), q.forms.volume, 1e-10));
    }
  }
  const Construction s = cross_polytope(3, 2.5);
  CHECK(rel_close(s.forms.volume, std::pow(5.0, 3) / 6.0, 1e-12));
  CHECK(rel_close(s.forms.iq, cross_iq(3.0), 1e-12));
  CHECK(rel_close(s.body.surface_area(), s.forms.surface_area, 1e-12));
  const Construction a = cross_polytope(1), b = cube(1);
  CHECK(rel_close(a.body.volume(), b.body.volume(), 1e-15));
  CHECK(rel_close(a.forms.iq, b.forms.iq, 1e-15));
  CHECK_THROWS_AS(cube(2, 0.0), SpecError);
  CHECK_THROWS_AS(cross_polytope(0), SpecError);
}

TEST_CASE("scaled and cartesian product") {
  const Construction c = scaled(cross_polytope(3), 0.7);
  CHECK(rel_close(c.forms.volume, c.body.volume(), 1e-12));
  CHECK(rel_close(c.forms.surface_area, c.body.surface_area(), 1e-12));
  CHECK(rel_close(*c.forms.inradius, 0.7 / std::sqrt(3.0), 1e-12));

  const Construction seg[2] = {cube(1), cube(1)};
  const Construction sq = cartesian_product(seg, false);
  CHECK(rel_close(sq.forms.iq, 4.0, 1e-12));
  CHECK(rel_close(sq.body.volume(), 4.0, 1e-12));
  CHECK(sq.body.facet_count() == 4);

  const Construction box[2] = {cube(2), cube(1)};
  const Construction b = cartesian_product(box, true);
  CHECK(rel_close(b.forms.iq, 6.0, 1e-12));
  CHECK(rel_close(b.forms.volume, 1.0, 1e-12));
  const Polytope r = rebuilt(b.body);
  CHECK(rel_close(r.volume(), 1.0, 1e-10));
  CHECK(rel_close(r.iq(), 6.0, 1e-10));

  for (std::size_t m : {2, 3})
    for (std::size_t k : {2, 3}) {
      if (m * k > 6) continue;
      std::vector<Construction> f(k, cross_polytope(m));
      const Construction p = cartesian_product(f, true);
      CHECK(rel_close(p.forms.iq, static_cast<double>(k) * cross_iq(static_cast<double>(m)), 1e-12));
      CHECK(p.body.facet_count() == k * (std::size_t{1} << m));
      CHECK(rel_close(p.body.volume(), 1.0, 1e-12));
      CHECK(rel_close(p.body.surface_area(), p.forms.surface_area, 1e-12));
      if (m * k <= 5) {
        const Polytope q = rebuilt(p.body);
        CHECK(rel_close(q.volume(), 1.0, 1e-10));
        CHECK(rel_close(q.surface_area(), p.forms.surface_area, 1e-10));
        CHECK(q.facet_count() == p.body.facet_count());
      }
    }
}

TEST_CASE("l1-sum examples") {
  L1SumSpec two{{cube(1), cube(1)}};
  const L1Sum s = l1_sum(two);
  CHECK(rel_close(s.result.forms.volume, 2.0, 1e-12));
  CHECK(rel_close(s.result.forms.surface_area, 4.0 * std::sqrt(2.0), 1e-12));
  CHECK(rel_close(oracle::shoelace_area(s.result.body.vertices()), 2.0, 1e-12));
  CHECK(rel_close(oracle::polygon_perimeter(s.result.body.vertices()), 4.0 * std::sqrt(2.0), 1e-12));

  for (std::size_t n = 2; n <= 7; ++n) {
    L1SumSpec spec;
    for (std::size_t i = 0; i < n; ++i) spec.summands.push_back(cube(1));
    const L1Sum r = l1_sum(spec);
    CHECK(r.hypotheses.all());
    REQUIRE(r.result.forms.minimal_iq.has_value());
    CHECK(rel_close(*r.result.forms.minimal_iq, cross_iq(static_cast<double>(n)), 1e-12));
    CHECK(rel_close(r.result.body.volume(), cross_polytope(n).forms.volume, 1e-12));
    CHECK(rel_close(r.result.body.surface_area(), cross_polytope(n).forms.surface_area, 1e-12));
    CHECK(r.result.body.facet_count() == (std::size_t{1} << n));
  }

  L1SumSpec one{{cube(3)}};
  const L1Sum u = l1_sum(one);
  CHECK(rel_close(u.result.forms.volume, 8.0, 1e-12));
  CHECK(rel_close(u.result.forms.surface_area, 24.0, 1e-12));

  CHECK_THROWS_AS(l1_sum(L1SumSpec{{Construction{simplex_regular(2).body.translated(Vec{0.0, 0.05}), {}}}}), SpecError);
}

TEST_CASE("l1-sum closed forms against the hull kernel") {
  // Segments, squares and cubes at assorted inradii, total dimension <= 5.
  const std::vector<std::vector<std::size_t>> dims = {{1, 1}, {1, 2}, {2, 2}, {1, 3}, {2, 3}, {1, 1, 1},
                                                      {1, 1, 2}, {1, 2, 2}, {1, 1, 3}, {1, 1, 1, 1}, {1, 1, 1, 2}};
  const double scales[3] = {1.0, 0.5, 1.7};
  int checked = 0;
  for (const auto& d : dims)
    for (int variant = 0; variant < 3; ++variant) {
      L1SumSpec spec;
      for (std::size_t i = 0; i < d.size(); ++i) spec.summands.push_back(cube(d[i], scales[(i + variant) % 3]));
      const L1Sum s = l1_sum(spec);
      const Polytope r = rebuilt(s.result.body);
      CHECK(rel_close(r.volume(), s.result.forms.volume, 1e-9));
      CHECK(rel_close(r.surface_area(), s.result.forms.surface_area, 1e-9));
      std::size_t facets = 1, verts = 0;
      for (const auto& c : spec.summands) {
        facets *= c.body.facet_count();
        verts += c.body.vertex_count();
      }
      CHECK(r.facet_count() == facets);
      CHECK(r.vertex_count() == verts);
      ++checked;
    }
  CHECK(checked == 33);
}

TEST_CASE("l1-sum facet assembly above the hull cap") {
  // Seven segments: assembled facets against the cross-polytope forms.
  L1SumSpec spec;
  for (int i = 0; i < 7; ++i) spec.summands.push_back(cube(1));
  const L1Sum s = l1_sum(spec);
  const Construction c = cross_polytope(7);
  CHECK(rel_close(s.result.body.volume(), c.forms.volume, 1e-12));
  CHECK(rel_close(s.result.body.surface_area(), c.forms.surface_area, 1e-12));

  L1SumSpec mixed{{scaled(cube(3), 1.0 / std::sqrt(3.0)), scaled(cube(2), 1.0 / std::sqrt(2.0)),
                   scaled(cube(2), 1.0 / std::sqrt(2.0))}};
  const L1Sum m = l1_sum(mixed);
  CHECK(m.result.body.dim() == 7);
  CHECK(rel_close(m.result.body.volume(), m.result.forms.volume, 1e-12));
  CHECK(rel_close(m.result.body.surface_area(), m.result.forms.surface_area, 1e-12));
  CHECK(m.hypotheses.all());
  CHECK(isotropy_residual(m.result.body.area_measure()) < 1e-12);
}

TEST_CASE("l1-sum minimal iq and hypotheses") {
  L1SumSpec spec{{scaled(cube(3), 1.0 / std::sqrt(3.0)), scaled(cube(2), 1.0 / std::sqrt(2.0))}};
  const L1Sum s = l1_sum(spec);
  CHECK(s.hypotheses.all());
  REQUIRE(s.result.forms.minimal_iq.has_value());
  // With h_i = 1/sqrt(b_i) the sum is itself isotropic: minimal iq = iq.
  CHECK(rel_close(*s.result.forms.minimal_iq, s.result.forms.iq, 1e-12));
  CHECK(isotropy_residual(s.result.body.area_measure()) < 1e-12);

  L1SumSpec wrong_h{{cube(2), cube(1)}};
  const L1Sum w = l1_sum(wrong_h);
  CHECK_FALSE(w.hypotheses.h_matches_dim);
  CHECK_FALSE(w.result.forms.minimal_iq.has_value());

  const Polytope tri = simplex_regular(2).body;
  const L1Sum t = l1_sum(L1SumSpec{{cube(1), Construction{tri, {}}}});
  CHECK_FALSE(t.hypotheses.symmetric);
  CHECK_FALSE(t.result.forms.minimal_iq.has_value());
}

TEST_CASE("beta identity on a segment") {
  for (int bp = 1; bp <= 3; ++bp) {
    const int steps = 200000;
    double s = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double y = -1.0 + (i + 0.5) * 2.0 / steps;
      s += std::pow(1.0 - std::abs(y), bp) * 2.0 / steps;
    }
    const double expect = oracle::factorial(1) * oracle::factorial(bp) / oracle::factorial(1 + bp) * 2.0;
    CHECK(std::abs(s - expect) < 1e-6);
  }
}

TEST_CASE("lindelof body") {
  std::vector<Vec> axes;
  for (std::size_t j = 0; j < 3; ++j) {
    axes.push_back(unit_vector(3, j));
    axes.push_back(-1.0 * unit_vector(3, j));
  }
  const Polytope c = lindelof_body(3, axes);
  CHECK(rel_close(c.volume(), 8.0, 1e-12));

  std::vector<Vec> diag;
  for (int mask = 0; mask < 8; ++mask)
    diag.push_back(Vec{mask & 1 ? -1.0 : 1.0, mask & 2 ? -1.0 : 1.0, mask & 4 ? -1.0 : 1.0});
  const Polytope d = lindelof_body(3, diag);
  CHECK(d.vertex_count() == 6);
  CHECK(rel_close(d.volume(), std::pow(std::sqrt(3.0), 3) * 4.0 / 3.0, 1e-12));
  for (const Vec& v : d.vertices()) CHECK(rel_close(norm(v), std::sqrt(3.0), 1e-12));

  std::vector<Vec> upper{{1.0, 0.2}, {-1.0, 0.3}, {0.0, 1.0}};
  CHECK_THROWS_AS(lindelof_body(2, upper), StructuralError);

  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      std::vector<Vec> u;
      for (std::size_t i = 0; i < 3 * n; ++i) u.push_back(oracle::random_unit(n, rng));
      Polytope k0;
      try {
        k0 = lindelof_body(n, u);
      } catch (const StructuralError&) {
        continue;
      }
      CHECK(rel_close(iq_circumscribed(k0), k0.iq(), 1e-9));
    }
}

TEST_CASE("lindelof inequality on random bodies sharing the normals") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> off(0.5, 1.5);
  int violations = 0, checked = 0;
  for (std::size_t n = 2; n <= 4; ++n)
    for (int t = 0; t < 20; ++t) {
      std::vector<Vec> u;
      do {
        u.clear();
        for (std::size_t i = 0; i < 2 * n + 2; ++i) u.push_back(oracle::random_unit(n, rng));
      } while (!positively_spanning(n, u));
      const double iq0 = lindelof_body(n, u).iq();
      std::vector<Halfspace> hs;
      for (const Vec& v : u) hs.push_back({v, off(rng)});
      const Polytope k = Polytope::from_h(HPolytope(n, hs));
      if (k.iq() < iq0 - 1e-9) ++violations;
      ++checked;
    }
  CHECK(checked == 60);
  CHECK(violations == 0);
}

TEST_CASE("pad_facets") {
  const Construction d = cross_polytope(2);
  const Padding p = pad_facets(d.body, 5, 1e-3);
  CHECK(p.body.facet_count() == 5);
  CHECK(std::abs(p.body.iq() - 4.0) < 1e-2);
  CHECK(rel_close(p.iq_shift, std::abs(p.body.iq() - 4.0), 1e-12));

  const Padding same = pad_facets(d.body, 4);
  CHECK(same.body.facet_count() == 4);
  CHECK(same.iq_shift == 0.0);

  // The cube corner is at distance sqrt(3) along the diagonal while its
  // neighbours sit 2/sqrt(3) lower, so 0.5 is still a clean cut.
  CHECK(pad_facets(cube(3).body, 7, 0.5).body.facet_count() == 7);
  CHECK_THROWS_AS(pad_facets(cube(3).body, 7, 1.5), GeometryError);
  CHECK_THROWS_AS(pad_facets(cube(3).body, 5), SpecError);

  const Padding sym = pad_facets(cube(3).body, 10);
  CHECK(sym.body.facet_count() == 10);
  CHECK(sym.body.origin_symmetric());
  CHECK(sym.iq_shift < 1e-2);

  const Padding tri = pad_facets(simplex_regular(3).body, 9);
  CHECK(tri.body.facet_count() == 9);
  CHECK(tri.iq_shift < 1e-2);
}

TEST_CASE("pad_vertices") {
  const Construction d = cross_polytope(2);
  const Padding p = pad_vertices(d.body, 6, false, 1e-3);
  CHECK(p.body.vertex_count() == 6);
  CHECK(std::abs(p.body.iq() - 4.0) < 1e-2);
  CHECK(pad_vertices(d.body, 4, false).body.vertex_count() == 4);
  CHECK_THROWS_AS(pad_vertices(d.body, 7, true), SpecError);
  CHECK_THROWS_AS(pad_vertices(simplex_regular(2).body, 5, true), SpecError);
  // Parallelogram with an obtuse corner next to the long edge: a far point
  // beyond that edge also sees the short side.
  const Polytope obtuse = Polytope::from_points({{0.0, 0.0}, {4.0, 0.0}, {5.0, 1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(pad_vertices(obtuse, 5, false, 2.5), GeometryError);
  CHECK(pad_vertices(obtuse, 5, false, 0.1).body.vertex_count() == 5);

  const Padding s = pad_vertices(cube(3).body, 12, true);
  CHECK(s.body.vertex_count() == 12);
  CHECK(s.body.origin_symmetric());
  CHECK(s.iq_shift < 1e-2);
}

TEST_CASE("extremal facet polytope") {
  const ExtremalFacet e = extremal_facet_polytope(5, 16);
  CHECK(e.branch == ExtremalFacet::Branch::kProduct);
  CHECK(e.m == 3);
  CHECK(e.a == 1);
  CHECK(e.r == 2);
  CHECK(e.b == 8);
  CHECK(e.result.body.facet_count() == 16);
  CHECK(rel_close(e.result.body.volume(), 1.0, 1e-10));
  CHECK(rel_close(e.predicted_iq_bound, 10.0 / std::sqrt(3.0), 1e-12));

  CHECK(extremal_facet_polytope(3, 4).branch == ExtremalFacet::Branch::kSimplex);
  const ExtremalFacet c = extremal_facet_polytope(3, 8);
  CHECK(c.branch == ExtremalFacet::Branch::kCross);
  CHECK(rel_close(c.result.forms.iq, cross_iq(3.0), 1e-12));

  // r = 1 on the product branch.
  const ExtremalFacet r1 = extremal_facet_polytope(4, 13);
  CHECK(r1.branch == ExtremalFacet::Branch::kProduct);
  CHECK(r1.r == 1);
  CHECK(r1.result.body.facet_count() == 13);

  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t phi : {n + 1, 2 * n, 3 * n, 4 * n, std::size_t{1} << n}) {
      if (phi < n + 1) continue;
      const ExtremalFacet x = extremal_facet_polytope(n, phi);
      CHECK(x.result.body.facet_count() == phi);
      const double band = x.result.body.iq() * std::sqrt(1.0 + std::log(static_cast<double>(phi) / n)) / n;
      CHECK(std::isfinite(band));
      CHECK(band > 0.0);
    }
  CHECK_THROWS_AS(extremal_facet_polytope(3, 3), SpecError);
}

TEST_CASE("extremal vertex polytope") {
  const ExtremalVertex e = extremal_vertex_polytope(5, 16);
  CHECK_FALSE(e.cube_branch);
  CHECK(e.m == 3);
  CHECK(e.a == 2);
  CHECK(e.r == 2);
  CHECK(e.base.body.vertex_count() == 12);
  CHECK(e.result.body.vertex_count() == 16);
  CHECK(e.base.forms.minimal_iq.has_value());

  const ExtremalVertex sq = extremal_vertex_polytope(2, 4);
  CHECK(sq.result.body.vertex_count() == 4);
  CHECK(rel_close(*sq.base.forms.minimal_iq, 4.0, 1e-12));

  const ExtremalVertex c = extremal_vertex_polytope(3, 8);
  CHECK(c.cube_branch);
  CHECK(rel_close(*c.base.forms.minimal_iq, 6.0, 1e-12));
  CHECK(c.result.body.vertex_count() == 8);

  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t beta : {2 * n, 4 * n, std::size_t{1} << n}) {
      if (beta < 2 * n) continue;
      const ExtremalVertex x = extremal_vertex_polytope(n, beta);
      CHECK(x.result.body.vertex_count() == beta);
      CHECK(x.result.body.origin_symmetric());
    }
  CHECK_THROWS_AS(extremal_vertex_polytope(3, 7), SpecError);
  CHECK_THROWS_AS(extremal_vertex_polytope(3, 4), SpecError);
}

TEST_CASE("central symmetrization examples") {
  const Symmetrization c = central_symmetrize(cube(3).body);
  CHECK(norm(c.x) < 1e-12);
  CHECK(rel_close(c.body.volume(), 8.0, 1e-12));

  const Polytope moved = cube(3).body.translated(Vec{0.3, -0.7, 1.1});
  const Symmetrization m = central_symmetrize(moved);
  CHECK(norm(m.x - Vec{0.6, -1.4, 2.2}) < 1e-9);
  CHECK(rel_close(m.body.volume(), 8.0, 1e-9));
  for (const Vec& v : m.body.vertices())
    for (double t : v) CHECK(rel_close(std::abs(t), 1.0, 1e-9));

  const Polytope tri = simplex_regular(2).body.translated(Vec{0.4, 0.1});
  const Symmetrization t = central_symmetrize(tri);
  CHECK(rel_close(t.volume_ratio, 2.0 / 3.0, 1e-9));
  CHECK(t.body.vertex_count() == 6);
  CHECK(rel_close(oracle::polygon_overlap(tri.vertices(), t.x) / tri.volume(), 2.0 / 3.0, 1e-9));
  CHECK(rel_close(overlap_volume(tri, t.x), oracle::polygon_overlap(tri.vertices(), t.x), 1e-9));
}

TEST_CASE("overlap volume against polygon clipping") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(Vec{u(rng), u(rng)});
    const Polytope k = Polytope::from_points(pts);
    const Vec x{0.3 * u(rng), 0.3 * u(rng)};
    const Vec z = 2.0 * k.centroid() + x;
    CHECK(std::abs(overlap_volume(k, z) - oracle::polygon_overlap(k.vertices(), z)) < 1e-12);
  }
  CHECK(overlap_volume(cube(2).body, Vec{5.0, 0.0}) == 0.0);
}

TEST_CASE("central symmetrization guarantee on random bodies") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int t = 0; t < 6; ++t) {
      std::vector<Vec> pts;
      const std::size_t count = t % 2 == 0 ? n + 1 : 3 * n;
      for (std::size_t i = 0; i < count; ++i) {
        Vec p(n);
        for (double& x : p) x = u(rng) + 2.0;
        pts.push_back(p);
      }
      const Polytope k = Polytope::from_points(pts);
      const Symmetrization s = central_symmetrize(k);
      const double nn = static_cast<double>(n);
      CHECK(std::pow(s.body.volume(), 1.0 / nn) >= 0.5 * std::pow(k.volume(), 1.0 / nn));
      CHECK(s.body.origin_symmetric());
      CHECK(s.exact);
      CHECK(s.volume_ratio >= overlap_volume(k, 2.0 * k.centroid()) / k.volume() - 1e-12);
      for (const Vec& v : s.body.vertices()) {
        bool found = false;
        for (const Vec& w : s.body.vertices())
          if (norm(v + w) <= 1e-9) found = true;
        CHECK(found);
      }
    }
}
