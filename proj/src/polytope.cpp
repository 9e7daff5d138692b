#include "isoperi/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "isoperi/errors.hpp"
#include "isoperi/hull.hpp"
#include "isoperi/lp.hpp"
#include "isoperi/sampling.hpp"

namespace isoperi {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kDedupRel = 1e-8;

std::vector<Vec> dedupe(std::vector<Vec> pts, double tol) {
  std::vector<Vec> out;
  for (Vec& p : pts) {
    bool dup = false;
    for (const Vec& q : out)
      if (norm(p - q) <= tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

void check_points(const std::vector<Vec>& pts) {
  if (pts.empty()) throw StructuralError("empty point set");
  const std::size_t n = pts[0].size();
  if (n == 0) throw StructuralError("points in dimension 0");
  for (const Vec& p : pts) {
    if (p.size() != n) throw StructuralError("points of mixed dimension");
    for (double x : p)
      if (!std::isfinite(x)) throw StructuralError("non-finite coordinate");
  }
}

double point_radius(const std::vector<Vec>& pts) {
  return hull::radius_about(pts, hull::centroid(pts));
}

}  // namespace

double AreaMeasure::total() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.weight;
  return s;
}

HPolytope::HPolytope(std::size_t dim, std::vector<Halfspace> hs) : dim_(dim), hs_(std::move(hs)) {
  if (dim_ == 0) throw StructuralError("dimension 0");
  if (hs_.empty()) throw StructuralError("no halfspaces");
  std::vector<Vec> normals;
  for (Halfspace& h : hs_) {
    if (h.normal.size() != dim_) throw StructuralError("halfspace normal has wrong dimension");
    const double l = norm(h.normal);
    if (!(l > 0.0) || !std::isfinite(l) || !std::isfinite(h.offset))
      throw StructuralError("halfspace normal is zero or non-finite");
    h.normal = (1.0 / l) * h.normal;
    h.offset /= l;
    if (!(h.offset > 0.0)) throw StructuralError("origin is not interior (offset <= 0)");
    normals.push_back(h.normal);
  }
  if (!positively_spanning(dim_, normals)) throw StructuralError("halfspaces define an unbounded set");
}

bool positively_spanning(std::size_t dim, std::span<const Vec> normals) {
  const std::size_t m = normals.size();
  if (m < dim + 1) return false;
  std::vector<Vec> with_origin{Vec(dim, 0.0)};
  with_origin.insert(with_origin.end(), normals.begin(), normals.end());
  if (hull::affine_basis(with_origin, 1e-10).size() < dim) return false;
  // Variables (lambda_1..lambda_m, s): maximize s with sum lambda u = 0,
  // sum lambda = 1, lambda_i >= s.
  Matrix a(2 * dim + 2 + m, m + 1);
  Vec b(a.rows(), 0.0);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      a(2 * j, i) = normals[i][j];
      a(2 * j + 1, i) = -normals[i][j];
    }
  for (std::size_t i = 0; i < m; ++i) {
    a(2 * dim, i) = 1.0;
    a(2 * dim + 1, i) = -1.0;
  }
  b[2 * dim] = 1.0;
  b[2 * dim + 1] = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    a(2 * dim + 2 + i, m) = 1.0;
    a(2 * dim + 2 + i, i) = -1.0;
  }
  Vec c(m + 1, 0.0);
  c[m] = 1.0;
  const lp::Result r = lp::maximize_nonneg(a, b, c);
  return r.status == lp::Status::kOptimal && r.value > 1e-12 / static_cast<double>(m);
}

Ball chebyshev_ball(std::size_t dim, std::span<const Halfspace> hs) {
  Matrix a(hs.size() + 1, dim + 1);
  Vec b(hs.size() + 1, 0.0);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = hs[i].normal[j];
    a(i, dim) = norm(hs[i].normal);
    b[i] = hs[i].offset;
  }
  a(hs.size(), dim) = -1.0;
  Vec c(dim + 1, 0.0);
  c[dim] = 1.0;
  const lp::Result r = lp::maximize_free(a, b, c);
  if (r.status == lp::Status::kUnbounded) throw StructuralError("halfspaces define an unbounded set");
  if (r.status == lp::Status::kInfeasible || !(r.value > 0.0))
    throw StructuralError("halfspaces have empty interior");
  return {Vec(r.x.begin(), r.x.begin() + static_cast<long>(dim)), r.value};
}

VertexEnumeration vertex_enumeration(const HPolytope& h) {
  const std::size_t n = h.dim();
  if (n > kMaxEnumDim || h.size() > kMaxEnumHalfspaces)
    throw SizeError("vertex enumeration caps exceeded (n <= 8, <= 256 halfspaces)");
  const Ball ball = chebyshev_ball(n, h.halfspaces());
  const Vec& c = ball.center;

  std::vector<Vec> polar;
  std::vector<int> rep(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double t = h[i].offset - dot(h[i].normal, c);
    Vec q = (1.0 / t) * h[i].normal;
    int found = -1;
    for (std::size_t k = 0; k < polar.size(); ++k)
      if (norm(polar[k] - q) <= 1e-10 * norm(q)) {
        found = static_cast<int>(k);
        break;
      }
    if (found < 0) {
      found = static_cast<int>(polar.size());
      polar.push_back(std::move(q));
    }
    rep[i] = found;
  }

  const hull::Hull ph = hull::convex_hull(polar, false);
  VertexEnumeration out;
  out.incidence.resize(h.size());
  out.supporting.assign(h.size(), false);
  std::vector<std::vector<int>> by_rep(polar.size());
  for (std::size_t i = 0; i < h.size(); ++i) by_rep[static_cast<std::size_t>(rep[i])].push_back(static_cast<int>(i));
  for (int e : ph.extreme)
    for (int i : by_rep[static_cast<std::size_t>(e)]) out.supporting[static_cast<std::size_t>(i)] = true;
  for (const hull::Facet& f : ph.facets) {
    if (!(f.offset > 0.0)) throw StructuralError("vertex enumeration lost the interior point");
    const int vid = static_cast<int>(out.vertices.size());
    out.vertices.push_back(c + (1.0 / f.offset) * f.normal);
    for (int q : f.vertices)
      for (int i : by_rep[static_cast<std::size_t>(q)]) out.incidence[static_cast<std::size_t>(i)].push_back(vid);
  }
  return out;
}

VertexEnumeration vertex_enumeration_subsets(const HPolytope& h) {
  const std::size_t n = h.dim(), m = h.size();
  if (n > kMaxEnumDim || m > kMaxEnumHalfspaces)
    throw SizeError("vertex enumeration caps exceeded (n <= 8, <= 256 halfspaces)");
  double subsets = 1.0;
  for (std::size_t k = 0; k < n; ++k) subsets = subsets * static_cast<double>(m - k) / static_cast<double>(k + 1);
  if (m < n) throw StructuralError("fewer halfspaces than dimensions");
  if (subsets > 5e6) throw SizeError("too many halfspace subsets to enumerate");

  double scale = 0.0;
  for (const Halfspace& s : h.halfspaces()) scale = std::max(scale, s.offset);
  VertexEnumeration out;
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) idx[k] = k;
  for (;;) {
    Matrix a(n, n);
    Vec b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) a(r, j) = h[idx[r]].normal[j];
      b[r] = h[idx[r]].offset;
    }
    try {
      const Vec x = solve(a, b);
      bool feasible = true;
      for (const Halfspace& s : h.halfspaces())
        if (dot(x, s.normal) - s.offset > kFeasTol * std::max(1.0, scale)) {
          feasible = false;
          break;
        }
      if (feasible) {
        bool dup = false;
        for (const Vec& v : out.vertices)
          if (norm(v - x) <= kDedupRel * std::max(1.0, scale)) {
            dup = true;
            break;
          }
        if (!dup) out.vertices.push_back(x);
      }
    } catch (const SingularityError&) {
    }
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (out.vertices.size() < n + 1) throw StructuralError("halfspaces have no full-dimensional vertex set");
  out.incidence.resize(m);
  out.supporting.assign(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Vec> tight;
    for (std::size_t v = 0; v < out.vertices.size(); ++v)
      if (std::abs(dot(out.vertices[v], h[i].normal) - h[i].offset) <= kFeasTol * std::max(1.0, scale)) {
        out.incidence[i].push_back(static_cast<int>(v));
        tight.push_back(out.vertices[v]);
      }
    out.supporting[i] = !tight.empty() && hull::affine_basis(tight, 1e-9 * std::max(1.0, scale)).size() + 1 == n;
  }
  return out;
}

VPolytope::VPolytope(std::vector<Vec> points) {
  check_points(points);
  const double r = point_radius(points);
  points = dedupe(std::move(points), kDedupRel * r);
  dim_ = points[0].size();
  if (points.size() < dim_ + 1) throw StructuralError("point set is not full-dimensional");
  const hull::Hull h = hull::convex_hull(points, false);
  for (int e : h.extreme) v_.push_back(points[static_cast<std::size_t>(e)]);
}

Polytope Polytope::build(std::vector<Vec> pts) {
  Polytope p;
  p.dim_ = pts[0].size();
  if (p.dim_ > kMaxHullDim || pts.size() > kMaxHullVertices)
    throw SizeError("exact hull caps exceeded (n <= 6, <= 2048 vertices)");
  hull::Hull h = hull::convex_hull(pts, true);
  if (h.extreme.size() != pts.size()) {
    std::vector<Vec> ext;
    for (int e : h.extreme) ext.push_back(pts[static_cast<std::size_t>(e)]);
    pts = std::move(ext);
    h = hull::convex_hull(pts, true);
  }
  p.vertices_ = std::move(pts);
  for (hull::Facet& f : h.facets) {
    if (!(f.measure > 0.0)) throw StructuralError("degenerate facet");
    p.facets_.push_back({std::move(f.normal), f.offset, f.measure, std::move(f.vertices), std::move(f.centroid)});
  }
  p.finish();
  return p;
}

void Polytope::finish() {
  const Vec c = hull::centroid(vertices_);
  const double n = static_cast<double>(dim_);
  double vol = 0.0;
  Vec g(dim_, 0.0);
  for (const FacetData& f : facets_) {
    const double cone = (f.offset - dot(f.normal, c)) * f.measure / n;
    vol += cone;
    for (std::size_t j = 0; j < dim_; ++j) g[j] += cone * (c[j] + n / (n + 1.0) * (f.centroid[j] - c[j]));
  }
  volume_ = vol;
  centroid_ = (1.0 / vol) * g;
}

Polytope Polytope::assemble(std::size_t dim, std::vector<Vec> vertices, std::vector<FacetData> facets) {
  Polytope p;
  p.dim_ = dim;
  p.vertices_ = std::move(vertices);
  p.facets_ = std::move(facets);
  for (FacetData& f : p.facets_)
    if (f.centroid.empty()) {
      std::vector<Vec> fv;
      for (int i : f.vertices) fv.push_back(p.vertices_.at(static_cast<std::size_t>(i)));
      f.centroid = hull::centroid(fv);
    }
  p.finish();
  return p;
}

Polytope Polytope::from_points(std::vector<Vec> points) {
  check_points(points);
  const double r = point_radius(points);
  points = dedupe(std::move(points), kDedupRel * r);
  if (points.size() < points[0].size() + 1) throw StructuralError("point set is not full-dimensional");
  return build(std::move(points));
}

Polytope Polytope::from_v(const VPolytope& v) { return build(v.vertices()); }

Polytope Polytope::from_h(const HPolytope& h) { return from_points(vertex_enumeration(h).vertices); }

Polytope Polytope::from_halfspaces(std::size_t dim, std::vector<Halfspace> hs) {
  for (const Halfspace& s : hs)
    if (s.normal.size() != dim) throw StructuralError("halfspace normal has wrong dimension");
  const Ball ball = chebyshev_ball(dim, hs);
  for (Halfspace& s : hs) s.offset -= dot(s.normal, ball.center);
  const Polytope centered = from_h(HPolytope(dim, std::move(hs)));
  return centered.translated(ball.center);
}

HPolytope Polytope::hrep() const {
  std::vector<Halfspace> hs;
  for (const FacetData& f : facets_) hs.push_back({f.normal, f.offset});
  return HPolytope(dim_, std::move(hs));
}

VPolytope Polytope::vrep() const { return VPolytope(vertices_); }

Vec Polytope::vertex_centroid() const { return hull::centroid(vertices_); }

bool Polytope::origin_interior(double tol) const {
  for (const FacetData& f : facets_)
    if (!(f.offset > tol)) return false;
  return true;
}

bool Polytope::contains(std::span<const double> x, double tol) const {
  for (const FacetData& f : facets_)
    if (dot(x, f.normal) > f.offset + tol * std::max(1.0, std::abs(f.offset))) return false;
  return true;
}

bool Polytope::origin_symmetric(double tol) const {
  const double r = std::max(1.0, point_radius(vertices_));
  for (const Vec& v : vertices_) {
    const Vec w = -1.0 * v;
    bool hit = false;
    for (const Vec& u : vertices_)
      if (norm(u - w) <= tol * r) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

double Polytope::surface_area() const {
  double s = 0.0;
  for (const FacetData& f : facets_) s += f.measure;
  return s;
}

double Polytope::iq() const { return iq_from(surface_area(), volume_, dim_); }

AreaMeasure Polytope::area_measure() const {
  AreaMeasure m;
  m.dim = dim_;
  for (const FacetData& f : facets_) {
    bool merged = false;
    for (AreaMeasure::Atom& a : m.atoms)
      if (norm(a.normal - f.normal) <= 1e-10) {
        a.weight += f.measure;
        merged = true;
        break;
      }
    if (!merged) m.atoms.push_back({f.normal, f.measure});
  }
  return m;
}

Polytope Polytope::translated(std::span<const double> t) const {
  Polytope p = *this;
  const Vec tv(t.begin(), t.end());
  for (Vec& v : p.vertices_) v = v + tv;
  for (FacetData& f : p.facets_) {
    f.offset += dot(f.normal, tv);
    f.centroid = f.centroid + tv;
  }
  p.centroid_ = p.centroid_ + tv;
  return p;
}

std::vector<FacetData> facet_enumeration(const VPolytope& v) {
  if (v.dim() > kMaxHullDim || v.size() > kMaxHullVertices)
    throw SizeError("exact hull caps exceeded (n <= 6, <= 2048 vertices)");
  return Polytope::from_v(v).facets();
}

double iq_from(double surface, double volume, std::size_t dim) {
  if (!(volume > 0.0)) throw StructuralError("zero volume");
  return surface / std::pow(volume, static_cast<double>(dim - 1) / static_cast<double>(dim));
}

SymMatrix covariance(const AreaMeasure& s) {
  SymMatrix c(s.dim);
  for (const AreaMeasure::Atom& a : s.atoms) c.add_outer(a.weight, a.normal);
  return c;
}

double inradius_origin(const HPolytope& h) {
  double r = h[0].offset;
  for (const Halfspace& s : h.halfspaces()) r = std::min(r, s.offset);
  return r;
}

double inradius_origin(const Polytope& p) {
  double r = p.facets().at(0).offset;
  for (const FacetData& f : p.facets()) r = std::min(r, f.offset);
  return r;
}

double iq_circumscribed(const Polytope& p) {
  const double h = inradius_origin(p);
  if (!(h > 0.0)) throw TangencyError("origin is not interior");
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < p.facets().size(); ++i)
    if (p.facets()[i].offset - h > 1e-9 * std::max(1.0, h)) bad.push_back(i);
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "facets not tangent to the inball of radius " << h << ":";
    for (std::size_t i : bad) msg << ' ' << i << " (offset " << p.facets()[i].offset << ')';
    throw TangencyError(msg.str());
  }
  const double n = static_cast<double>(p.dim());
  return n / h * std::pow(p.volume(), 1.0 / n);
}

bool contains(const HPolytope& h, std::span<const double> x, double tol) {
  for (const Halfspace& s : h.halfspaces())
    if (dot(x, s.normal) > s.offset + tol * std::max(1.0, std::abs(s.offset))) return false;
  return true;
}

Polytope apply_map(const Polytope& p, const Matrix& m) {
  if (m.rows() != p.dim() || m.cols() != p.dim()) throw StructuralError("map has wrong shape");
  (void)inverse(m);
  std::vector<Vec> pts;
  pts.reserve(p.vertices().size());
  for (const Vec& v : p.vertices()) pts.push_back(m * v);
  return Polytope::from_points(std::move(pts));
}

HPolytope apply_map(const HPolytope& h, const Matrix& m) {
  if (m.rows() != h.dim() || m.cols() != h.dim()) throw StructuralError("map has wrong shape");
  const Matrix inv_t = inverse(m).transposed();
  std::vector<Halfspace> hs;
  for (const Halfspace& s : h.halfspaces()) hs.push_back({inv_t * s.normal, s.offset});
  return HPolytope(h.dim(), std::move(hs));
}

AreaMeasure pushforward_area_measure(const AreaMeasure& s, const Matrix& t) {
  if (t.rows() != s.dim || t.cols() != s.dim) throw StructuralError("map has wrong shape");
  const Matrix inv_t = inverse(t).transposed();
  const double jac = std::abs(det(t));
  AreaMeasure out;
  out.dim = s.dim;
  for (const AreaMeasure::Atom& a : s.atoms) {
    const Vec w = inv_t * a.normal;
    const double l = norm(w);
    out.atoms.push_back({(1.0 / l) * w, jac * a.weight * l});
  }
  return out;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

Box bounding_box(const HPolytope& h) {
  const std::size_t n = h.dim();
  Matrix a(h.size(), n);
  Vec b(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = h[i].normal[j];
    b[i] = h[i].offset;
  }
  Box box{Vec(n), Vec(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Vec c(n, 0.0);
    c[j] = 1.0;
    const lp::Result up = lp::maximize_free(a, b, c);
    c[j] = -1.0;
    const lp::Result down = lp::maximize_free(a, b, c);
    if (up.status != lp::Status::kOptimal || down.status != lp::Status::kOptimal)
      throw StructuralError("bounding box: polytope unbounded or empty");
    box.hi[j] = up.value;
    box.lo[j] = -down.value;
  }
  return box;
}

namespace {

// Rows are (a_0..a_{d-1}, b).
struct HSystem {
  std::size_t d = 0;
  std::vector<double> rows;  // stride d + 1
  std::size_t count() const { return rows.size() / (d + 1); }
  const double* row(std::size_t i) const { return rows.data() + i * (d + 1); }
};

double polygon_area(const HSystem& h, const double lo[2], const double hi[2]) {
  std::vector<std::array<double, 2>> poly{{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}}, next;
  for (std::size_t i = 0; i < h.count() && poly.size() >= 3; ++i) {
    const double* r = h.row(i);
    next.clear();
    for (std::size_t v = 0; v < poly.size(); ++v) {
      const auto& p = poly[v];
      const auto& q = poly[(v + 1) % poly.size()];
      const double fp = r[0] * p[0] + r[1] * p[1] - r[2];
      const double fq = r[0] * q[0] + r[1] * q[1] - r[2];
      if (fp <= 0.0) next.push_back(p);
      if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
        const double t = fp / (fp - fq);
        next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
    }
    poly.swap(next);
  }
  if (poly.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t v = 0; v < poly.size(); ++v) {
    const auto& p = poly[v];
    const auto& q = poly[(v + 1) % poly.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return std::max(0.0, 0.5 * s);
}

double interval_length(const HSystem& h, double lo, double hi, double tol) {
  for (std::size_t i = 0; i < h.count(); ++i) {
    const double* r = h.row(i);
    if (r[0] > 0.0) hi = std::min(hi, r[1] / r[0]);
    else if (r[0] < 0.0) lo = std::max(lo, r[1] / r[0]);
    else if (r[1] < -tol) return 0.0;
  }
  return std::max(0.0, hi - lo);
}

// Drops rows that repeat a hyperplane already present.
void drop_repeats(HSystem& h, double tol) {
  const std::size_t w = h.d + 1;
  std::vector<double> out;
  std::vector<Vec> seen;
  for (std::size_t i = 0; i < h.count(); ++i) {
    const double* r = h.row(i);
    double l = 0.0;
    for (std::size_t j = 0; j < h.d; ++j) l += r[j] * r[j];
    l = std::sqrt(l);
    Vec key(w);
    for (std::size_t j = 0; j < w; ++j) key[j] = r[j] / l;
    bool dup = false;
    for (const Vec& k : seen) {
      double diff = 0.0;
      for (std::size_t j = 0; j < w; ++j) diff = std::max(diff, std::abs(k[j] - key[j]));
      if (diff <= tol) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    seen.push_back(key);
    out.insert(out.end(), r, r + w);
  }
  h.rows.swap(out);
}

double lasserre(HSystem h, const std::vector<std::size_t>& axes, const Box& box, double tol) {
  if (h.d == 1) return interval_length(h, box.lo[axes[0]], box.hi[axes[0]], tol);
  if (h.d == 2) {
    const double lo[2] = {box.lo[axes[0]], box.lo[axes[1]]};
    const double hi[2] = {box.hi[axes[0]], box.hi[axes[1]]};
    return polygon_area(h, lo, hi);
  }
  drop_repeats(h, 1e-11);
  const std::size_t d = h.d, w = d + 1, m = h.count();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = h.row(i);
    std::size_t k = 0;
    for (std::size_t j = 1; j < d; ++j)
      if (std::abs(ai[j]) > std::abs(ai[k])) k = j;
    if (ai[d] == 0.0) continue;  // facet through the origin: zero cone
    HSystem sub;
    sub.d = d - 1;
    bool empty = false;
    for (std::size_t j = 0; j < m && !empty; ++j) {
      if (j == i) continue;
      const double* aj = h.row(j);
      const double f = aj[k] / ai[k];
      double l = 0.0, lj = 0.0;
      std::array<double, 17> r{};
      std::size_t c = 0;
      for (std::size_t t = 0; t < d; ++t) {
        lj += aj[t] * aj[t];
        if (t == k) continue;
        r[c] = aj[t] - f * ai[t];
        l += r[c] * r[c];
        ++c;
      }
      r[c] = aj[d] - f * ai[d];
      if (std::sqrt(l) <= 1e-12 * std::sqrt(lj)) {
        if (r[c] < -tol) empty = true;
        continue;
      }
      sub.rows.insert(sub.rows.end(), r.begin(), r.begin() + static_cast<long>(w - 1));
    }
    if (empty) continue;
    std::vector<std::size_t> sub_axes;
    for (std::size_t t = 0; t < d; ++t)
      if (t != k) sub_axes.push_back(axes[t]);
    const double face = lasserre(std::move(sub), sub_axes, box, tol);
    total += ai[d] / std::abs(ai[k]) * face;
  }
  return std::max(0.0, total / static_cast<double>(d));
}

}  // namespace

double volume_h(std::size_t dim, std::span<const Halfspace> hs) {
  if (dim == 0 || dim > SymMatrix::kMaxDim) throw SizeError("volume_h: dimension out of range");
  Matrix a(hs.size(), dim);
  Vec b(hs.size());
  HSystem h;
  h.d = dim;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i].normal.size() != dim) throw StructuralError("halfspace normal has wrong dimension");
    const double l = norm(hs[i].normal);
    if (!(l > 0.0)) throw StructuralError("halfspace with zero normal");
    for (std::size_t j = 0; j < dim; ++j) {
      a(i, j) = hs[i].normal[j] / l;
      h.rows.push_back(a(i, j));
    }
    b[i] = hs[i].offset / l;
    h.rows.push_back(b[i]);
  }
  Box box{Vec(dim), Vec(dim)};
  for (std::size_t j = 0; j < dim; ++j) {
    Vec c(dim, 0.0);
    c[j] = 1.0;
    const lp::Result up = lp::maximize_free(a, b, c);
    if (up.status == lp::Status::kInfeasible) return 0.0;
    c[j] = -1.0;
    const lp::Result down = lp::maximize_free(a, b, c);
    if (up.status == lp::Status::kUnbounded || down.status == lp::Status::kUnbounded)
      throw StructuralError("volume_h: halfspaces define an unbounded set");
    box.hi[j] = up.value;
    box.lo[j] = -down.value;
  }
  double scale = 0.0;
  for (std::size_t j = 0; j < dim; ++j) scale = std::max(scale, box.hi[j] - box.lo[j]);
  if (!(scale > 0.0)) return 0.0;
  std::vector<std::size_t> axes(dim);
  for (std::size_t j = 0; j < dim; ++j) axes[j] = j;
  return lasserre(std::move(h), axes, box, 1e-12 * scale);
}

VolumeEstimate mc_volume(const HPolytope& h, std::size_t samples, std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw SamplingError("mc_volume needs at least one sample");
  const Box box = bounding_box(h);
  const std::size_t n = h.dim();
  const std::vector<std::size_t> hits = run_blocks<std::size_t>(
      samples, seed, workers, [&](Rng& rng, std::size_t count, std::size_t& acc) {
        Vec x(n);
        for (std::size_t s = 0; s < count; ++s) {
          for (std::size_t j = 0; j < n; ++j) x[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * uniform01(rng);
          if (contains(h, x)) ++acc;
        }
      });
  std::size_t total = 0;
  for (std::size_t k : hits) total += k;
  const double nn = static_cast<double>(samples);
  const double p = static_cast<double>(total) / nn;
  if (p < 1e-6) throw SamplingError("acceptance rate below 1e-6; use a tighter box");
  const double bv = box.volume();
  return {bv * p, bv * std::sqrt(p * (1.0 - p) / nn), samples, seed};
}

}  // namespace isoperi
