#include "isoperi/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "isoperi/errors.hpp"

namespace isoperi::hull {

Vec centroid(std::span<const Vec> pts) {
  if (pts.empty()) throw StructuralError("centroid of an empty point set");
  Vec c(pts[0].size(), 0.0);
  for (const Vec& p : pts)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (double& x : c) x /= static_cast<double>(pts.size());
  return c;
}

double radius_about(std::span<const Vec> pts, const Vec& center) {
  double r = 0.0;
  for (const Vec& p : pts) r = std::max(r, norm(p - center));
  return r;
}

std::vector<Vec> affine_basis(std::span<const Vec> pts, double tol) {
  std::vector<Vec> basis;
  if (pts.empty()) return basis;
  const std::size_t dim = pts[0].size();
  std::vector<Vec> res;
  res.reserve(pts.size());
  for (const Vec& p : pts) res.push_back(p - pts[0]);
  while (basis.size() < dim) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      const double l = norm(res[i]);
      if (l > best_norm) {
        best_norm = l;
        best = i;
      }
    }
    if (best_norm <= tol) break;
    Vec e = (1.0 / best_norm) * res[best];
    for (Vec& r : res) {
      const double c = dot(r, e);
      for (std::size_t j = 0; j < dim; ++j) r[j] -= c * e[j];
    }
    basis.push_back(std::move(e));
  }
  return basis;
}

std::vector<Vec> orthonormal_complement(std::span<const Vec> basis, std::size_t dim) {
  std::vector<Vec> all(basis.begin(), basis.end());
  std::vector<Vec> out;
  while (all.size() < dim) {
    Vec best;
    double best_norm = -1.0;
    for (std::size_t axis = 0; axis < dim; ++axis) {
      Vec r = unit_vector(dim, axis);
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& e : all) {
          const double c = dot(r, e);
          for (std::size_t j = 0; j < dim; ++j) r[j] -= c * e[j];
        }
      const double l = norm(r);
      if (l > best_norm) {
        best_norm = l;
        best = std::move(r);
      }
    }
    Vec e = (1.0 / best_norm) * best;
    all.push_back(e);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::vector<Vec> project(std::span<const Vec> pts, std::span<const Vec> basis) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const Vec& p : pts) {
    Vec q(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) q[j] = dot(p, basis[j]);
    out.push_back(std::move(q));
  }
  return out;
}

class Wrapper {
 public:
  Wrapper(std::span<const Vec> pts, bool with_measures)
      : pts_(pts), k_(pts[0].size()), measures_(with_measures) {
    const Vec c = centroid(pts);
    scale_ = std::max(radius_about(pts, c), 1e-300);
    eps_ = kRelTol * scale_;
  }

  Hull run() {
    Hull h;
    h.dim = k_;
    if (k_ == 1) {
      one_dimensional(h);
    } else {
      if (affine_basis(pts_, eps_).size() < k_)
        throw StructuralError("point set is not full-dimensional");
      wrap(h);
    }
    mark_extreme(h);
    return h;
  }

 private:
  void one_dimensional(Hull& h) const {
    double lo = pts_[0][0], hi = pts_[0][0];
    for (const Vec& p : pts_) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (hi - lo <= eps_) throw StructuralError("point set is not full-dimensional");
    Facet left{{-1.0}, -lo, {}, 1.0, {lo}};
    Facet right{{1.0}, hi, {}, 1.0, {hi}};
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (pts_[i][0] - lo <= eps_) left.vertices.push_back(static_cast<int>(i));
      if (hi - pts_[i][0] <= eps_) right.vertices.push_back(static_cast<int>(i));
    }
    h.facets = {left, right};
  }

  std::vector<int> contact(const Vec& normal, double offset) const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (std::abs(dot(pts_[i], normal) - offset) <= eps_) ids.push_back(static_cast<int>(i));
    return ids;
  }

  // Hyperplane through the contact points (pivoted Gram-Schmidt on their
  // differences, dropping the weakest direction), oriented like `hint`,
  // then re-collect the contact set against it.
  Facet refine(std::vector<int> ids, const Vec& hint) const {
    for (int round = 0; round < 3; ++round) {
      std::vector<Vec> sel;
      sel.reserve(ids.size());
      for (int i : ids) sel.push_back(pts_[static_cast<std::size_t>(i)]);
      const Vec c = centroid(sel);
      std::vector<Vec> basis = affine_basis(sel, 0.0);
      if (basis.size() + 1 < k_) throw StructuralError("gift wrapping produced a degenerate facet");
      basis.resize(k_ - 1);
      Vec normal = orthonormal_complement(basis, k_).front();
      if (dot(normal, hint) < 0.0) normal = -1.0 * normal;
      const double offset = dot(normal, c);
      std::vector<int> next = contact(normal, offset);
      if (next == ids || round == 2) {
        Facet f{normal, offset, std::move(next), 0.0, {}};
        return f;
      }
      ids = std::move(next);
    }
    return {};  // unreachable
  }

  // Rotate the supporting hyperplane with normal `a` through `anchor` about
  // the subspace orthogonal to both `a` and `b`, toward `b`, until it hits
  // another point. Points strictly below the plane are the candidates.
  Vec pivot(const Vec& a, const Vec& b, const Vec& anchor) const {
    double best = std::numbers::pi * 2.0;
    for (const Vec& p : pts_) {
      const Vec d = p - anchor;
      const double y = dot(d, a);
      if (y >= -eps_) continue;
      const double x = dot(d, b);
      const double theta = std::atan2(-y, x);
      best = std::min(best, theta);
    }
    if (best >= std::numbers::pi)
      throw StructuralError("gift wrapping found no pivot point");
    Vec n(k_);
    for (std::size_t j = 0; j < k_; ++j) n[j] = std::cos(best) * a[j] + std::sin(best) * b[j];
    return normalized(n);
  }

  Facet initial_facet() const {
    Vec a(k_, 0.0);
    a[0] = -1.0;
    double h = -1e300;
    for (const Vec& p : pts_) h = std::max(h, dot(p, a));
    std::vector<int> s = contact(a, h);
    for (;;) {
      std::vector<Vec> sel;
      for (int i : s) sel.push_back(pts_[static_cast<std::size_t>(i)]);
      std::vector<Vec> basis = affine_basis(sel, eps_);
      if (basis.size() + 1 >= k_) break;
      basis.push_back(a);
      const Vec b = orthonormal_complement(basis, k_).front();
      const Vec& anchor = sel.front();
      a = pivot(a, b, anchor);
      s = contact(a, dot(anchor, a));
    }
    return refine(s, a);
  }

  void wrap(Hull& h) {
    std::map<std::vector<int>, std::size_t> known;
    auto add = [&](Facet f) {
      for (const Vec& p : pts_)
        if (dot(p, f.normal) - f.offset > 1e3 * eps_)
          throw StructuralError("convex hull inconsistency: point beyond a facet");
      if (known.count(f.vertices)) return;
      // Same hyperplane reached with a slightly different contact set.
      for (const Facet& g : h.facets)
        if (norm(g.normal - f.normal) <= kRelTol * 10 &&
            std::abs(g.offset - f.offset) <= 10 * eps_)
          return;
      known.emplace(f.vertices, h.facets.size());
      h.facets.push_back(std::move(f));
    };
    add(initial_facet());

    for (std::size_t q = 0; q < h.facets.size(); ++q) {
      const Vec a = h.facets[q].normal;
      const std::vector<int> fv = h.facets[q].vertices;
      std::vector<Vec> on_facet;
      for (int i : fv) on_facet.push_back(pts_[static_cast<std::size_t>(i)]);
      const Vec normal_vec[1] = {a};
      const std::vector<Vec> basis = orthonormal_complement(normal_vec, k_);
      const std::vector<Vec> local = project(on_facet, basis);
      const Hull sub = convex_hull(local, measures_);

      if (measures_) {
        // Cones from the vertex average over the ridges.
        const Vec c = centroid(local);
        const double d = static_cast<double>(k_ - 1);
        double m = 0.0;
        Vec g(k_ - 1, 0.0);
        for (const Facet& r : sub.facets) {
          const double cone = (r.offset - dot(r.normal, c)) * r.measure / d;
          m += cone;
          for (std::size_t j = 0; j < k_ - 1; ++j) g[j] += cone * (c[j] + d / (d + 1.0) * (r.centroid[j] - c[j]));
        }
        Facet& f = h.facets[q];
        f.measure = m;
        f.centroid = f.offset * a;
        for (std::size_t j = 0; j < k_ - 1; ++j) f.centroid = f.centroid + (g[j] / m) * basis[j];
      }

      for (const Facet& ridge : sub.facets) {
        Vec b(k_, 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j)
          for (std::size_t t = 0; t < k_; ++t) b[t] += ridge.normal[j] * basis[j][t];
        b = normalized(b);
        const Vec& anchor = on_facet[static_cast<std::size_t>(ridge.vertices.front())];
        const Vec n = pivot(a, b, anchor);
        add(refine(contact(n, dot(anchor, n)), n));
      }
    }
  }

  void mark_extreme(Hull& h) const {
    std::vector<std::vector<Vec>> normals(pts_.size());
    for (const Facet& f : h.facets)
      for (int i : f.vertices) normals[static_cast<std::size_t>(i)].push_back(f.normal);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (normals[i].size() < k_) continue;
      std::vector<Vec> with_origin{Vec(k_, 0.0)};
      with_origin.insert(with_origin.end(), normals[i].begin(), normals[i].end());
      if (affine_basis(with_origin, 1e-7).size() == k_) h.extreme.push_back(static_cast<int>(i));
    }
  }

  std::span<const Vec> pts_;
  std::size_t k_;
  bool measures_;
  double scale_ = 1.0;
  double eps_ = 0.0;
};

}  // namespace

Hull convex_hull(std::span<const Vec> pts, bool with_measures) {
  if (pts.empty()) throw StructuralError("convex hull of an empty point set");
  if (pts[0].empty()) throw StructuralError("convex hull in dimension 0");
  return Wrapper(pts, with_measures).run();
}

double volume(std::span<const Vec> pts) {
  const Hull h = convex_hull(pts, true);
  const Vec c = centroid(pts);
  double v = 0.0;
  for (const Facet& f : h.facets) v += (f.offset - dot(f.normal, c)) * f.measure;
  return v / static_cast<double>(h.dim);
}

double face_measure(std::span<const Vec> pts, const Vec& normal) {
  if (normal.size() == 1) return 1.0;
  const Vec nv[1] = {normal};
  const std::vector<Vec> basis = orthonormal_complement(nv, normal.size());
  const std::vector<Vec> local = project(pts, basis);
  return volume(local);
}

}  // namespace isoperi::hull
