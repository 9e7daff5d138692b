#include "isoperi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "isoperi/errors.hpp"
#include "isoperi/sampling.hpp"

namespace isoperi {

TestFunction test_function(const BLDecomposition& d) { return {d.c, d.u}; }

TestFunction test_function(std::span<const Vec> y) {
  TestFunction tf;
  for (const Vec& v : y) {
    tf.c.push_back(dot(v, v));
    tf.u.push_back(normalized(v));
  }
  return tf;
}

double phi_eval(const TestFunction& tf, std::span<const double> x) {
  double p = 1.0;
  for (std::size_t i = 0; i < tf.c.size(); ++i) {
    const double t = dot(x, tf.u[i]);
    p *= 1.0 - tf.c[i] * t * t;
  }
  return p;
}

Vec phi_grad(const TestFunction& tf, std::span<const double> x) {
  const std::size_t m = tf.c.size();
  std::vector<double> proj(m), fac(m);
  for (std::size_t i = 0; i < m; ++i) {
    proj[i] = dot(x, tf.u[i]);
    fac[i] = 1.0 - tf.c[i] * proj[i] * proj[i];
  }
  Vec g(x.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double others = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) others *= fac[j];
    const double s = -2.0 * tf.c[i] * proj[i] * others;
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += s * tf.u[i][k];
  }
  return g;
}

namespace {

struct Gauss {
  std::vector<double> x, w;  // on [0, 1]
};

// P_q(z) and P_q'(z) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t q, double z) {
  double p0 = 1.0, p1 = z;
  for (std::size_t k = 2; k <= q; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  return {p1, static_cast<double>(q) * (z * p1 - p0) / (z * z - 1.0)};
}

Gauss gauss_legendre(std::size_t q) {
  Gauss g;
  const double nq = static_cast<double>(q);
  for (std::size_t i = 0; i < q; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nq + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(q, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(q, z).second;
    g.x.push_back(0.5 * (1.0 - z));
    g.w.push_back(1.0 / ((1.0 - z * z) * dp * dp));
  }
  return g;
}

// phi^2 and |grad phi|^2 together, with prefix/suffix products in place of
// the per-term product over the others.
class Integrand {
 public:
  explicit Integrand(const TestFunction& tf)
      : tf_(tf), proj_(tf.c.size()), fac_(tf.c.size()), suffix_(tf.c.size() + 1), g_(tf.u[0].size()) {}

  void operator()(std::span<const double> x, double& phi2, double& grad2) {
    const std::size_t m = tf_.c.size();
    for (std::size_t i = 0; i < m; ++i) {
      proj_[i] = dot(x, tf_.u[i]);
      fac_[i] = 1.0 - tf_.c[i] * proj_[i] * proj_[i];
    }
    suffix_[m] = 1.0;
    for (std::size_t i = m; i-- > 0;) suffix_[i] = suffix_[i + 1] * fac_[i];
    std::fill(g_.begin(), g_.end(), 0.0);
    double prefix = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = -2.0 * tf_.c[i] * proj_[i] * prefix * suffix_[i + 1];
      for (std::size_t k = 0; k < g_.size(); ++k) g_[k] += s * tf_.u[i][k];
      prefix *= fac_[i];
    }
    phi2 = prefix * prefix;
    grad2 = dot(g_, g_);
  }

 private:
  const TestFunction& tf_;
  std::vector<double> proj_, fac_, suffix_;
  Vec g_;
};

struct Integrals {
  double num = 0.0, den = 0.0;
};

void accumulate(Integrand& f, const Vec& x, double w, Integrals& acc) {
  double p2 = 0.0, g2 = 0.0;
  f(x, p2, g2);
  acc.num += w * g2;
  acc.den += w * p2;
}

RayleighBound quadrature(const HPolytope& body, const TestFunction& tf) {
  const std::size_t n = body.dim();
  const Gauss g = gauss_legendre(2 * tf.c.size() + 1);
  Integrand f(tf);
  Integrals acc;
  if (n == 1) {
    double lo = -1e300, hi = 1e300;
    for (const Halfspace& h : body.halfspaces()) {
      if (h.normal[0] > 0.0) hi = std::min(hi, h.offset / h.normal[0]);
      else lo = std::max(lo, h.offset / h.normal[0]);
    }
    for (std::size_t i = 0; i < g.x.size(); ++i) accumulate(f, Vec{lo + g.x[i] * (hi - lo)}, g.w[i] * (hi - lo), acc);
  } else {
    std::vector<Vec> v = vertex_enumeration(body).vertices;
    Vec c(2, 0.0);
    for (const Vec& p : v) c = c + p;
    c = (1.0 / static_cast<double>(v.size())) * c;
    std::sort(v.begin(), v.end(), [&](const Vec& a, const Vec& b) {
      return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    // Fan triangles, each from the unit square by (s, t) = (xi, xi eta).
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
      const Vec e1 = v[k] - v[0], e2 = v[k + 1] - v[k];
      const double jac = std::abs(e1[0] * e2[1] - e1[1] * e2[0]);
      for (std::size_t i = 0; i < g.x.size(); ++i)
        for (std::size_t j = 0; j < g.x.size(); ++j) {
          const double s = g.x[i], t = g.x[i] * g.x[j];
          const Vec x{v[0][0] + s * e1[0] + t * e2[0], v[0][1] + s * e1[1] + t * e2[1]};
          accumulate(f, x, g.w[i] * g.w[j] * g.x[i] * jac, acc);
        }
    }
  }
  RayleighBound r;
  r.exact = true;
  r.numerator = acc.num;
  r.denominator = acc.den;
  r.lambda_bound = acc.num / acc.den;
  return r;
}

struct Moments {
  double n = 0.0, d = 0.0, nn = 0.0, dd = 0.0, nd = 0.0;
  std::size_t inside = 0;
};

RayleighBound monte_carlo(const HPolytope& body, const TestFunction& tf, std::size_t samples, std::uint64_t seed,
                          unsigned workers) {
  if (samples == 0) throw SamplingError("rayleigh_bound needs at least one sample");
  const std::size_t dim = body.dim();
  const Box box = bounding_box(body);
  const double vol = box.volume();
  const auto blocks = run_blocks<Moments>(samples, seed, workers, [&](Rng& rng, std::size_t count, Moments& m) {
    Vec x(dim);
    Integrand f(tf);
    for (std::size_t s = 0; s < count; ++s) {
      for (std::size_t j = 0; j < dim; ++j) x[j] = box.lo[j] + uniform01(rng) * (box.hi[j] - box.lo[j]);
      if (!contains(body, x, 0.0)) continue;
      double a = 0.0, b = 0.0;
      f(x, b, a);
      m.n += a;
      m.d += b;
      m.nn += a * a;
      m.dd += b * b;
      m.nd += a * b;
      ++m.inside;
    }
  });
  Moments t;
  for (const Moments& b : blocks) {
    t.n += b.n;
    t.d += b.d;
    t.nn += b.nn;
    t.dd += b.dd;
    t.nd += b.nd;
    t.inside += b.inside;
  }
  const double s = static_cast<double>(samples);
  if (t.inside == 0 || static_cast<double>(t.inside) / s < 1e-6)
    throw SamplingError("rayleigh_bound: acceptance rate degenerate");
  const double mn = t.n / s, md = t.d / s;
  const double vn = t.nn / s - mn * mn, vd = t.dd / s - md * md, cnd = t.nd / s - mn * md;
  const double r = mn / md;
  double var = (vn - 2.0 * r * cnd + r * r * vd) / (s * md * md);
  if (var < 0.0) {
    if (var < -1e-12 * r * r) throw std::logic_error("rayleigh_bound: negative variance");
    var = 0.0;
  }
  RayleighBound out;
  out.exact = false;
  out.numerator = mn * vol;
  out.denominator = md * vol;
  out.lambda_bound = r;
  out.halfwidth = 4.0 * std::sqrt(var);
  out.samples = samples;
  out.seed = seed;
  return out;
}

}  // namespace

RayleighBound rayleigh_bound(const HPolytope& body, const TestFunction& tf, std::size_t samples, std::uint64_t seed,
                             unsigned workers) {
  if (tf.c.size() != tf.u.size() || tf.c.empty()) throw StructuralError("rayleigh_bound: malformed test function");
  if (body.dim() <= 2) return quadrature(body, tf);
  return monte_carlo(body, tf, samples, seed, workers);
}

double box_lambda_reference(std::span<const double> sides) {
  double s = 0.0;
  for (double a : sides) {
    if (!(a > 0.0)) throw SpecError("box_lambda_reference: sides must be positive");
    s += std::numbers::pi * std::numbers::pi / (a * a);
  }
  return s;
}

ScalingCheck scaling_law_check(const HPolytope& k, double s, std::size_t samples, std::uint64_t seed,
                               unsigned workers) {
  if (!(s > 0.0)) throw SpecError("scaling_law_check: s must be positive");
  const std::vector<Vec> y = slab_vectors(k);
  std::vector<Vec> ys;
  std::vector<Halfspace> hs;
  for (const Vec& v : y) {
    ys.push_back((1.0 / s) * v);
    hs.push_back({ys.back(), 1.0});
    hs.push_back({-1.0 * ys.back(), 1.0});
  }
  const HPolytope sk(k.dim(), std::move(hs));
  const RayleighBound a = rayleigh_bound(k, test_function(y), samples, seed, workers);
  const RayleighBound b = rayleigh_bound(sk, test_function(ys), samples, seed, workers);
  ScalingCheck c;
  c.s = s;
  c.bound = a.lambda_bound;
  c.scaled_bound = b.lambda_bound;
  c.ratio = a.lambda_bound / b.lambda_bound;
  c.exact = a.exact && b.exact;
  c.tolerance = c.exact ? 1e-12 * a.lambda_bound : a.halfwidth + s * s * b.halfwidth;
  c.ok = std::abs(b.lambda_bound * s * s - a.lambda_bound) <= c.tolerance;
  return c;
}

SpectralCertificate spectral_certificate(const HPolytope& k, std::size_t samples, std::uint64_t seed,
                                         unsigned workers) {
  const BLTransform t = bl_transform(k);
  const VolumeBoundCheck v = bl_volume_bound_check(t.body, t.decomposition, samples, seed, workers);
  const RayleighBound r = rayleigh_bound(t.body, test_function(t.decomposition), samples, seed, workers);
  SpectralCertificate c;
  c.n = k.dim();
  c.m = t.decomposition.c.size();
  c.lambda_bound = r.lambda_bound;
  c.halfwidth = r.halfwidth;
  c.five_m = 5.0 * static_cast<double>(c.m);
  c.vol_bound_lhs = v.lhs;
  c.vol_bound_product = v.product_bound;
  c.vol_bound_rhs = v.weak_bound;
  c.volume_bound_slack = v.weak_bound - v.lhs;
  c.vol_halfwidth = v.halfwidth;
  c.identity_residual = t.decomposition.identity_residual;
  c.weight_sum = t.decomposition.weight_sum;
  c.exact = r.exact;
  c.volume_exact = v.exact;
  c.samples = r.exact ? 0 : r.samples;
  c.seed = seed;
  c.passed = r.lambda_bound + r.halfwidth <= c.five_m && v.ok;
  return c;
}

}  // namespace isoperi
