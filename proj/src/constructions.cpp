#include "isoperi/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isoperi/errors.hpp"
#include "isoperi/hull.hpp"
#include "isoperi/positions.hpp"

namespace isoperi {

namespace {

constexpr double kIsoTol = 1e-10;

double factorial(std::size_t k) { return std::exp(std::lgamma(static_cast<double>(k) + 1.0)); }

double regular_simplex_volume(std::size_t n) {
  // side 1
  return std::pow(2.0, -0.5 * static_cast<double>(n)) * std::sqrt(static_cast<double>(n) + 1.0) / factorial(n);
}

Polytope scale_polytope(const Polytope& p, double s) {
  std::vector<Vec> v;
  for (const Vec& x : p.vertices()) v.push_back(s * x);
  std::vector<FacetData> f = p.facets();
  const double m = std::pow(s, static_cast<double>(p.dim()) - 1.0);
  for (FacetData& d : f) {
    d.offset *= s;
    d.measure *= m;
    d.centroid = s * d.centroid;
  }
  return Polytope::assemble(p.dim(), std::move(v), std::move(f));
}

std::optional<double> minimal_if_isotropic(const Polytope& p, double iq) {
  if (isotropy_residual(p.area_measure()) <= kIsoTol) return iq;
  return std::nullopt;
}

double diameter(const Polytope& p) {
  double d = 0.0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, norm(v[i] - v[j]));
  return d;
}

Construction exact_construction(Polytope p) {
  ClosedForms f = make_closed_forms(p.dim(), p.volume(), p.surface_area(), p.facet_count(), p.vertex_count());
  if (p.origin_interior()) f.inradius = inradius_origin(p);
  f.minimal_iq = minimal_if_isotropic(p, f.iq);
  return {std::move(p), f};
}

bool pow2_at_least(std::size_t count, std::size_t n) {
  // count >= 2^n without overflow
  if (n >= 63) return std::log2(static_cast<double>(count)) >= static_cast<double>(n);
  return count >= (std::size_t{1} << n);
}

std::vector<double> distance_profile(const Polytope& p, const FacetData& f) {
  std::vector<double> d;
  for (std::size_t i = 0; i < f.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < f.vertices.size(); ++j)
      d.push_back(norm(p.vertices()[static_cast<std::size_t>(f.vertices[i])] -
                       p.vertices()[static_cast<std::size_t>(f.vertices[j])]));
  std::sort(d.begin(), d.end());
  return d;
}

bool congruent_facets(const Polytope& p) {
  const auto& fs = p.facets();
  const auto ref = distance_profile(p, fs[0]);
  const double scale = std::max(1e-300, ref.empty() ? 1.0 : ref.back());
  for (const FacetData& f : fs) {
    if (std::abs(f.measure - fs[0].measure) > 1e-9 * fs[0].measure) return false;
    const auto d = distance_profile(p, f);
    if (d.size() != ref.size()) return false;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (std::abs(d[i] - ref[i]) > 1e-9 * scale) return false;
  }
  return true;
}

}  // namespace

ClosedForms make_closed_forms(std::size_t dim, double volume, double surface, std::size_t facets,
                              std::size_t vertices) {
  ClosedForms f;
  f.volume = volume;
  f.surface_area = surface;
  f.iq = iq_from(surface, volume, dim);
  f.facet_count = facets;
  f.vertex_count = vertices;
  return f;
}

Construction simplex_regular(std::size_t n) {
  if (n < 1 || n > 10) throw SpecError("simplex_regular needs 1 <= n <= 10");
  const double nn = static_cast<double>(n);
  // Vertices e_i / sqrt 2 of R^{n+1}, in the Helmert basis of the sum-zero
  // hyperplane.
  std::vector<Vec> v(n + 1, Vec(n, 0.0));
  for (std::size_t k = 1; k <= n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) v[i][k - 1] = s / std::sqrt(2.0);
    v[k][k - 1] = -static_cast<double>(k) * s / std::sqrt(2.0);
  }
  const double circum = std::sqrt(nn / (2.0 * (nn + 1.0)));
  const double inr = 1.0 / std::sqrt(2.0 * nn * (nn + 1.0));
  const double facet_measure = n == 1 ? 1.0 : regular_simplex_volume(n - 1);
  std::vector<FacetData> facets;
  for (std::size_t j = 0; j <= n; ++j) {
    FacetData f;
    f.normal = (-1.0 / circum) * v[j];
    f.offset = inr;
    f.measure = facet_measure;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != j) f.vertices.push_back(static_cast<int>(i));
    facets.push_back(std::move(f));
  }
  Polytope body = Polytope::assemble(n, std::move(v), std::move(facets));
  ClosedForms f;
  f.volume = regular_simplex_volume(n);
  f.surface_area = (nn + 1.0) * facet_measure;
  f.iq = std::pow(nn, 1.5) * std::pow(nn + 1.0, 0.5 + 0.5 / nn) / std::pow(factorial(n), 1.0 / nn);
  f.inradius = inr;
  f.facet_count = n + 1;
  f.vertex_count = n + 1;
  f.minimal_iq = minimal_if_isotropic(body, f.iq);
  return {std::move(body), f};
}

Construction cross_polytope(std::size_t n, double scale) {
  if (n < 1 || !(scale > 0.0)) throw SpecError("cross_polytope needs n >= 1 and scale > 0");
  if (n > 20) throw SizeError("cross_polytope: n > 20 has too many facets to list");
  const double nn = static_cast<double>(n);
  std::vector<Vec> v;
  for (std::size_t j = 0; j < n; ++j) {
    v.push_back(scale * unit_vector(n, j));
    v.push_back(-scale * unit_vector(n, j));
  }
  const double measure = std::pow(scale, nn - 1.0) * std::sqrt(nn) / factorial(n - 1);
  std::vector<FacetData> facets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    FacetData f;
    f.normal.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const bool neg = (mask >> j) & 1;
      f.normal[j] = (neg ? -1.0 : 1.0) / std::sqrt(nn);
      f.vertices.push_back(static_cast<int>(2 * j + (neg ? 1 : 0)));
    }
    f.offset = scale / std::sqrt(nn);
    f.measure = measure;
    facets.push_back(std::move(f));
  }
  Polytope body = Polytope::assemble(n, std::move(v), std::move(facets));
  ClosedForms f;
  f.volume = std::pow(2.0 * scale, nn) / factorial(n);
  f.surface_area = std::pow(2.0, nn) * measure;
  f.iq = 2.0 * std::pow(nn, 1.5) / std::pow(factorial(n), 1.0 / nn);
  f.inradius = scale / std::sqrt(nn);
  f.facet_count = std::size_t{1} << n;
  f.vertex_count = 2 * n;
  f.minimal_iq = minimal_if_isotropic(body, f.iq);
  return {std::move(body), f};
}

Construction cube(std::size_t n, double scale) {
  if (n < 1 || !(scale > 0.0)) throw SpecError("cube needs n >= 1 and scale > 0");
  if (n > 16) throw SizeError("cube: n > 16 has too many vertices to list");
  const double nn = static_cast<double>(n);
  std::vector<Vec> v;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = ((mask >> j) & 1) ? -scale : scale;
    v.push_back(std::move(x));
  }
  const double measure = std::pow(2.0 * scale, nn - 1.0);
  std::vector<FacetData> facets;
  for (std::size_t j = 0; j < n; ++j)
    for (int sign : {1, -1}) {
      FacetData f;
      f.normal = static_cast<double>(sign) * unit_vector(n, j);
      f.offset = scale;
      f.measure = measure;
      for (std::size_t mask = 0; mask < v.size(); ++mask)
        if ((((mask >> j) & 1) != 0) == (sign < 0)) f.vertices.push_back(static_cast<int>(mask));
      facets.push_back(std::move(f));
    }
  Polytope body = Polytope::assemble(n, std::move(v), std::move(facets));
  ClosedForms f;
  f.volume = std::pow(2.0 * scale, nn);
  f.surface_area = 2.0 * nn * measure;
  f.iq = 2.0 * nn;
  f.inradius = scale;
  f.facet_count = 2 * n;
  f.vertex_count = std::size_t{1} << n;
  f.minimal_iq = minimal_if_isotropic(body, f.iq);
  return {std::move(body), f};
}

Construction scaled(const Construction& c, double s) {
  if (!(s > 0.0)) throw SpecError("scale factor must be positive");
  const double n = static_cast<double>(c.body.dim());
  Construction out{scale_polytope(c.body, s), c.forms};
  out.forms.volume *= std::pow(s, n);
  out.forms.surface_area *= std::pow(s, n - 1.0);
  if (out.forms.inradius) *out.forms.inradius *= s;
  return out;
}

Construction cartesian_product(std::span<const Construction> factors_in, bool normalize) {
  if (factors_in.empty()) throw SpecError("cartesian_product needs at least one factor");
  std::vector<Construction> factors;
  for (const Construction& c : factors_in)
    factors.push_back(normalize ? scaled(c, std::pow(c.forms.volume, -1.0 / static_cast<double>(c.body.dim())))
                                : c);
  const std::size_t k = factors.size();
  std::vector<std::size_t> dims, offs;
  std::size_t n = 0;
  double vertex_count = 1.0;
  for (const Construction& c : factors) {
    offs.push_back(n);
    dims.push_back(c.body.dim());
    n += c.body.dim();
    vertex_count *= static_cast<double>(c.body.vertex_count());
  }
  if (vertex_count > 65536.0) throw SizeError("cartesian_product: too many vertices");

  // Mixed-radix vertex index: digit i is the vertex index within factor i.
  std::vector<std::size_t> radix;
  for (const Construction& c : factors) radix.push_back(c.body.vertex_count());
  const auto total = static_cast<std::size_t>(vertex_count);
  std::vector<Vec> verts;
  std::vector<std::vector<std::size_t>> digits;
  for (std::size_t id = 0; id < total; ++id) {
    std::vector<std::size_t> d(k);
    std::size_t rest = id;
    Vec x(n);
    for (std::size_t i = 0; i < k; ++i) {
      d[i] = rest % radix[i];
      rest /= radix[i];
      const Vec& p = factors[i].body.vertices()[d[i]];
      std::copy(p.begin(), p.end(), x.begin() + static_cast<long>(offs[i]));
    }
    verts.push_back(std::move(x));
    digits.push_back(std::move(d));
  }

  std::vector<FacetData> facets;
  for (std::size_t i = 0; i < k; ++i) {
    double others = 1.0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) others *= factors[j].body.volume();
    for (const FacetData& f : factors[i].body.facets()) {
      FacetData g;
      g.normal.assign(n, 0.0);
      std::copy(f.normal.begin(), f.normal.end(), g.normal.begin() + static_cast<long>(offs[i]));
      g.offset = f.offset;
      g.measure = f.measure * others;
      g.centroid.assign(n, 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        const Vec& src = j == i ? f.centroid : factors[j].body.centroid();
        std::copy(src.begin(), src.end(), g.centroid.begin() + static_cast<long>(offs[j]));
      }
      std::vector<bool> on(factors[i].body.vertex_count(), false);
      for (int v : f.vertices) on[static_cast<std::size_t>(v)] = true;
      for (std::size_t id = 0; id < total; ++id)
        if (on[digits[id][i]]) g.vertices.push_back(static_cast<int>(id));
      facets.push_back(std::move(g));
    }
  }
  Polytope body = Polytope::assemble(n, std::move(verts), std::move(facets));

  double vol = 1.0, surface = 0.0;
  std::size_t facet_count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    vol *= factors[i].forms.volume;
    double term = factors[i].forms.surface_area;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) term *= factors[j].forms.volume;
    surface += term;
    facet_count += factors[i].forms.facet_count;
  }
  ClosedForms f = make_closed_forms(n, vol, surface, facet_count, total);
  if (body.origin_interior()) f.inradius = inradius_origin(body);
  f.minimal_iq = minimal_if_isotropic(body, f.iq);
  return {std::move(body), f};
}

double l1_sum_minimal_iq(std::span<const std::size_t> dims, std::span<const double> partials) {
  double n = 0.0;
  for (std::size_t b : dims) n += static_cast<double>(b);
  double log_inner = -std::lgamma(n + 1.0);
  double log_partials = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const double b = static_cast<double>(dims[i]);
    log_inner += -1.5 * b * std::log(b) + std::lgamma(b + 1.0);
    log_partials += b / n * std::log(partials[i]);
  }
  return std::exp(log_inner / n + 1.5 * std::log(n) + log_partials);
}

L1Sum l1_sum(const L1SumSpec& spec) {
  if (spec.summands.empty()) throw SpecError("l1_sum needs at least one summand");
  L1Sum out;
  out.hypotheses.tangent = true;
  out.hypotheses.symmetric = true;
  out.hypotheses.congruent_facets = true;
  out.hypotheses.isotropic = true;
  out.hypotheses.h_matches_dim = true;
  std::size_t n = 0;
  double prod = 1.0, inv_h2 = 0.0, vertex_count = 0.0, facet_count = 1.0;
  std::vector<double> partials;
  for (std::size_t i = 0; i < spec.summands.size(); ++i) {
    const Construction& c = spec.summands[i];
    const Polytope& k = c.body;
    if (!k.origin_interior()) throw SpecError("l1_sum: summand " + std::to_string(i) + " does not contain the origin");
    const double h = inradius_origin(k);
    for (const FacetData& f : k.facets())
      if (std::abs(f.offset - h) > 1e-9 * h)
        throw SpecError("l1_sum: summand " + std::to_string(i) + " has a facet off its inball (tangency violated)");
    const std::size_t b = k.dim();
    out.dims.push_back(b);
    out.inradii.push_back(h);
    n += b;
    prod *= factorial(b) * k.volume();
    inv_h2 += 1.0 / (h * h);
    vertex_count += static_cast<double>(k.vertex_count());
    facet_count *= static_cast<double>(k.facet_count());
    out.hypotheses.symmetric = out.hypotheses.symmetric && k.origin_symmetric();
    out.hypotheses.congruent_facets = out.hypotheses.congruent_facets && congruent_facets(k);
    const bool iso = isotropy_residual(k.area_measure()) <= kIsoTol;
    out.hypotheses.isotropic = out.hypotheses.isotropic && iso;
    out.hypotheses.h_matches_dim =
        out.hypotheses.h_matches_dim && std::abs(h * std::sqrt(static_cast<double>(b)) - 1.0) <= 1e-12;
    partials.push_back(k.iq());
  }

  std::vector<Vec> pts;
  std::size_t off = 0;
  for (const Construction& c : spec.summands) {
    for (const Vec& v : c.body.vertices()) {
      Vec x(n, 0.0);
      std::copy(v.begin(), v.end(), x.begin() + static_cast<long>(off));
      pts.push_back(std::move(x));
    }
    off += c.body.dim();
  }

  Polytope body;
  if (n <= kMaxHullDim) {
    body = Polytope::from_points(std::move(pts));
  } else {
    // Facets are joins of one facet per summand; the cone over a join is
    // the l1-sum of the summand cones.
    if (facet_count > 65536.0) throw SizeError("l1_sum: too many facets");
    const double h = 1.0 / std::sqrt(inv_h2);
    std::vector<FacetData> facets;
    const std::size_t a = spec.summands.size();
    std::vector<std::size_t> pick(a, 0);
    for (;;) {
      FacetData g;
      g.normal.assign(n, 0.0);
      g.offset = h;
      double cone = 1.0;
      std::size_t base = 0, vbase = 0;
      for (std::size_t i = 0; i < a; ++i) {
        const Polytope& k = spec.summands[i].body;
        const FacetData& f = k.facets()[pick[i]];
        const double hi = out.inradii[i];
        for (std::size_t j = 0; j < k.dim(); ++j) g.normal[base + j] = h / hi * f.normal[j];
        for (int v : f.vertices) g.vertices.push_back(static_cast<int>(vbase) + v);
        cone *= factorial(k.dim()) * hi * f.measure / static_cast<double>(k.dim());
        base += k.dim();
        vbase += k.vertex_count();
      }
      g.measure = static_cast<double>(n) / h * cone / factorial(n);
      facets.push_back(std::move(g));
      std::size_t i = 0;
      while (i < a && ++pick[i] == spec.summands[i].body.facet_count()) pick[i++] = 0;
      if (i == a) break;
    }
    body = Polytope::assemble(n, std::move(pts), std::move(facets));
  }

  ClosedForms f = make_closed_forms(n, prod / factorial(n), std::sqrt(inv_h2) / factorial(n - 1) * prod,
                                    static_cast<std::size_t>(facet_count), static_cast<std::size_t>(vertex_count));
  f.inradius = 1.0 / std::sqrt(inv_h2);
  if (out.hypotheses.all()) f.minimal_iq = l1_sum_minimal_iq(out.dims, partials);
  out.result = {std::move(body), f};
  return out;
}

Polytope lindelof_body(std::size_t dim, std::span<const Vec> normals) {
  std::vector<Vec> units;
  for (const Vec& u : normals) {
    if (u.size() != dim) throw StructuralError("lindelof_body: normal has wrong dimension");
    units.push_back(normalized(u));
  }
  if (!positively_spanning(dim, units))
    throw StructuralError("lindelof_body: normals lie in a closed hemisphere, the body is unbounded");
  std::vector<Halfspace> hs;
  for (Vec& u : units) hs.push_back({std::move(u), 1.0});
  return Polytope::from_h(HPolytope(dim, std::move(hs)));
}

Padding pad_facets(const Polytope& k, std::size_t target, std::optional<double> delta) {
  if (target < k.facet_count()) throw SpecError("pad_facets: target below the current facet count");
  if (delta && !(*delta > 0.0)) throw SpecError("pad_facets: delta must be positive");
  const bool symmetric = k.origin_interior() && k.origin_symmetric();
  const double diam = diameter(k);
  Polytope cur = k;
  double used = 0.0;
  while (cur.facet_count() < target) {
    const bool pair = symmetric && target - cur.facet_count() >= 2;
    const Vec center = symmetric ? Vec(k.dim(), 0.0) : cur.centroid();
    const auto& verts = cur.vertices();
    std::size_t best = 0;
    for (std::size_t i = 1; i < verts.size(); ++i)
      if (norm(verts[i] - center) > norm(verts[best] - center) * (1.0 + 1e-12)) best = i;
    Vec dir(k.dim(), 0.0);
    for (const FacetData& f : cur.facets())
      if (std::find(f.vertices.begin(), f.vertices.end(), static_cast<int>(best)) != f.vertices.end())
        dir = dir + f.normal;
    dir = normalized(dir);
    const double alpha = dot(verts[best], dir);
    double next = -1e300;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (i != best) next = std::max(next, dot(verts[i], dir));

    bool done = false;
    for (int attempt = 0; attempt <= (delta ? 0 : kPadRetries); ++attempt) {
      const double d = delta ? *delta : kPadDefaultRel * diam * std::ldexp(1.0, -attempt);
      const double cut = alpha - d;
      if (!(cut > next + 1e-9 * diam)) {
        if (delta) throw GeometryError("pad_facets: cut depth removes more than one vertex");
        continue;
      }
      std::vector<Halfspace> hs;
      for (const FacetData& f : cur.facets()) hs.push_back({f.normal, f.offset});
      hs.push_back({dir, cut});
      if (pair) hs.push_back({-1.0 * dir, cut});
      Polytope cand = Polytope::from_halfspaces(k.dim(), std::move(hs));
      if (cand.facet_count() != cur.facet_count() + (pair ? 2u : 1u)) {
        if (delta) throw GeometryError("pad_facets: cut did not add exactly one facet");
        continue;
      }
      cur = std::move(cand);
      used = d;
      done = true;
      break;
    }
    if (!done) throw GeometryError("pad_facets: no valid cut after the retry cap");
  }
  return {cur, std::abs(cur.iq() - k.iq()), used};
}

Padding pad_vertices(const Polytope& k, std::size_t target, bool symmetric, std::optional<double> delta) {
  if (target < k.vertex_count()) throw SpecError("pad_vertices: target below the current vertex count");
  if (delta && !(*delta > 0.0)) throw SpecError("pad_vertices: delta must be positive");
  if (symmetric && (target - k.vertex_count()) % 2 != 0)
    throw SpecError("pad_vertices: symmetric padding needs an even increment");
  if (symmetric && !k.origin_symmetric()) throw SpecError("pad_vertices: symmetric padding of a non-symmetric body");
  const double diam = diameter(k);
  Polytope cur = k;
  double used = 0.0;
  while (cur.vertex_count() < target) {
    const auto& fs = cur.facets();
    std::size_t best = 0;
    for (std::size_t i = 1; i < fs.size(); ++i)
      if (fs[i].measure > fs[best].measure * (1.0 + 1e-12)) best = i;
    const std::size_t add = symmetric ? 2 : 1;

    bool done = false;
    for (int attempt = 0; attempt <= (delta ? 0 : kPadRetries); ++attempt) {
      const double d = delta ? *delta : kPadDefaultRel * diam * std::ldexp(1.0, -attempt);
      const Vec p = fs[best].centroid + d * fs[best].normal;
      bool beneath = true;
      for (std::size_t i = 0; i < fs.size(); ++i)
        if (i != best && dot(p, fs[i].normal) >= fs[i].offset - 1e-9 * diam) beneath = false;
      if (!beneath) {
        if (delta) throw GeometryError("pad_vertices: point sees more than one facet");
        continue;
      }
      std::vector<Vec> pts = cur.vertices();
      pts.push_back(p);
      if (symmetric) pts.push_back(-1.0 * p);
      Polytope cand = Polytope::from_points(std::move(pts));
      if (cand.vertex_count() != cur.vertex_count() + add) {
        if (delta) throw GeometryError("pad_vertices: placement did not add exactly one vertex");
        continue;
      }
      cur = std::move(cand);
      used = d;
      done = true;
      break;
    }
    if (!done) throw GeometryError("pad_vertices: no valid placement after the retry cap");
  }
  return {cur, std::abs(cur.iq() - k.iq()), used};
}

ExtremalFacet extremal_facet_polytope(std::size_t n, std::size_t phi) {
  if (n < 1) throw SpecError("extremal_facet_polytope: n >= 1");
  if (phi < n + 1) throw SpecError("extremal_facet_polytope: phi >= n + 1");
  ExtremalFacet out;
  if (pow2_at_least(phi, n)) {
    out.branch = ExtremalFacet::Branch::kCross;
    out.result = exact_construction(pad_facets(cross_polytope(n).body, phi).body);
  } else if (phi <= 3 * n) {
    out.branch = ExtremalFacet::Branch::kSimplex;
    out.result = exact_construction(pad_facets(simplex_regular(n).body, phi).body);
  } else {
    out.branch = ExtremalFacet::Branch::kProduct;
    // Largest m >= 2 with phi m > n 2^m.
    std::size_t m = 2;
    while (m + 1 < 63 && static_cast<double>(phi) * static_cast<double>(m + 1) >
                             static_cast<double>(n) * std::ldexp(1.0, static_cast<int>(m + 1)))
      ++m;
    const std::size_t a = (n - 1) / m;
    const std::size_t r = n - a * m;
    const std::size_t pm = std::size_t{1} << m;
    if (phi < a * pm + (std::size_t{1} << r)) throw std::logic_error("extremal_facet_polytope: b < 2^r");
    const std::size_t b = phi - a * pm;
    out.m = m;
    out.a = a;
    out.r = r;
    out.b = b;
    std::vector<Construction> factors;
    if (r >= 2) {
      for (std::size_t i = 0; i < a; ++i) factors.push_back(cross_polytope(m));
      factors.push_back(exact_construction(pad_facets(cross_polytope(r).body, b).body));
    } else {
      // A segment has two facets only: pad B^m x [-1,1] instead.
      for (std::size_t i = 0; i + 1 < a; ++i) factors.push_back(cross_polytope(m));
      const Construction pair[2] = {cross_polytope(m), cube(1)};
      const Construction joint = cartesian_product(pair, false);
      factors.push_back(exact_construction(pad_facets(joint.body, pm + b).body));
    }
    out.result = cartesian_product(factors, true);
    out.predicted_iq_bound = 2.0 * static_cast<double>(n) / std::sqrt(static_cast<double>(m));
  }
  if (out.result.body.facet_count() != phi) throw std::logic_error("extremal_facet_polytope: facet count mismatch");
  return out;
}

ExtremalVertex extremal_vertex_polytope(std::size_t n, std::size_t beta) {
  if (n < 1) throw SpecError("extremal_vertex_polytope: n >= 1");
  if (beta % 2 != 0 || beta < 2 * n) throw SpecError("extremal_vertex_polytope: beta must be even and >= 2n");
  ExtremalVertex out;
  const double nn = static_cast<double>(n);
  out.target_band = std::sqrt(nn * std::log(static_cast<double>(beta) / nn));
  if (pow2_at_least(beta, n)) {
    out.cube_branch = true;
    out.base = cube(n);
  } else {
    std::size_t m = 2;
    while (m + 1 < 63 && std::ldexp(1.0, static_cast<int>(m + 1)) * nn <= static_cast<double>(beta) * static_cast<double>(m + 1))
      ++m;
    if (n < m + 1) throw std::logic_error("extremal_vertex_polytope: n < m + 1");
    const std::size_t a = (n - 1) / m + 1;
    const std::size_t r = n - (a - 1) * m;
    out.m = m;
    out.a = a;
    out.r = r;
    L1SumSpec spec;
    for (std::size_t i = 0; i + 1 < a; ++i) spec.summands.push_back(scaled(cube(m), 1.0 / std::sqrt(static_cast<double>(m))));
    spec.summands.push_back(scaled(cube(r), 1.0 / std::sqrt(static_cast<double>(r))));
    out.base = l1_sum(spec).result;
  }
  const Padding padded = pad_vertices(out.base.body, beta, true);
  out.result = exact_construction(padded.body);
  if (out.result.body.vertex_count() != beta) throw std::logic_error("extremal_vertex_polytope: vertex count mismatch");
  return out;
}

namespace {

std::vector<Halfspace> symmetric_slabs(const Polytope& k, const Vec& x) {
  std::vector<Halfspace> hs;
  for (const FacetData& f : k.facets()) {
    const double t = f.offset - 0.5 * dot(f.normal, x);
    hs.push_back({f.normal, t});
    hs.push_back({-1.0 * f.normal, t});
  }
  return hs;
}

}  // namespace

double overlap_volume(const Polytope& k, const Vec& x) {
  return volume_h(k.dim(), symmetric_slabs(k, x));
}

Symmetrization central_symmetrize(const Polytope& k, std::uint64_t seed) {
  const std::size_t n = k.dim();
  const bool exact = n <= 4;
  const double nn = static_cast<double>(n);
  auto objective = [&](const Vec& x) -> double {
    if (exact) return overlap_volume(k, x);
    const auto hs = symmetric_slabs(k, x);
    for (const Halfspace& h : hs)
      if (!(h.offset > 0.0)) return 0.0;
    return mc_volume(HPolytope(n, hs), 20000, seed).mean;
  };

  const Vec x0 = 2.0 * k.centroid();
  Vec x = x0;
  double fx = objective(x);
  Vec lo(n, 1e300), hi(n, -1e300);
  for (const Vec& v : k.vertices())
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  // Coordinate-wise golden section, 50 evaluations in total.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  const std::size_t per = std::max<std::size_t>(2, 50 / n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = 0.25 * (hi[j] - lo[j]);
    double a = x[j] - w, b = x[j] + w;
    Vec y = x;
    auto at = [&](double t) {
      y[j] = t;
      return objective(y);
    };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = at(c), fd = at(d);
    for (std::size_t it = 2; it < per; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = at(d);
      }
    }
    const double t = fc >= fd ? c : d;
    const double ft = std::max(fc, fd);
    if (ft > fx * (1.0 + 1e-12)) {
      x[j] = t;
      fx = ft;
    }
  }

  auto meets = [&](const Polytope& body) {
    return std::pow(body.volume(), 1.0 / nn) >= 0.5 * std::pow(k.volume(), 1.0 / nn) * (1.0 - 1e-12);
  };
  auto build = [&](const Vec& at) { return Polytope::from_h(HPolytope(n, symmetric_slabs(k, at))); };

  Polytope body;
  bool ok = false;
  try {
    body = build(x);
    ok = meets(body);
  } catch (const StructuralError&) {
  }
  if (!ok) {
    x = x0;
    body = build(x);
    if (!meets(body)) throw std::logic_error("central_symmetrize: volume guarantee violated at twice the centroid");
  }
  return {x, body, body.volume() / k.volume(), exact};
}

}  // namespace isoperi
