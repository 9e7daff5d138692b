#include "isoperi/positions.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "isoperi/errors.hpp"
#include "isoperi/sampling.hpp"

namespace isoperi {

double surface_area_of_image(const AreaMeasure& s, const Matrix& a) {
  const double d = det(a);
  if (!(std::abs(d) > 0.0) || !std::isfinite(d)) throw SingularityError("surface_area_of_image: singular map");
  const Matrix inv_t = inverse(a).transposed();
  double total = 0.0;
  for (const auto& atom : s.atoms) total += atom.weight * norm(inv_t * atom.normal);
  return std::abs(d) * total;
}

double isotropy_residual(const AreaMeasure& s) {
  const SymMatrix c = covariance(s);
  const std::size_t n = c.dim();
  const double tr = c.trace();
  if (!(tr > 0.0)) return 1.0;
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r = std::max(r, std::abs(c(i, j) * static_cast<double>(n) / tr - (i == j ? 1.0 : 0.0)));
  return r;
}

namespace {

struct Iterate {
  Matrix a;
  double surface = 0.0;
  double residual = 0.0;
};

Iterate evaluate(const AreaMeasure& s, Matrix a) {
  Iterate it;
  it.surface = surface_area_of_image(s, a);
  it.residual = isotropy_residual(pushforward_area_measure(s, a));
  it.a = std::move(a);
  return it;
}

// exp(X) for symmetric X.
Matrix sym_exp(const Matrix& x) {
  const EigenDecomposition e = sym_eig(SymMatrix(x));
  const std::size_t n = x.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::exp(e.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += w * e.vectors(i, k) * e.vectors(j, k);
  }
  return out;
}

// Newton step for X -> sum w |exp(-X) u| over symmetric traceless X, from
// the second-order expansion 1 - <Xu,u> + |Xu|^2 - <Xu,u>^2 / 2 of each
// term. Empty when the model is not positive definite.
std::optional<Matrix> newton_direction(const AreaMeasure& img) {
  const std::size_t n = img.dim;
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix b(n, n);
      b(i, j) = b(j, i) = 1.0;
      basis.push_back(std::move(b));
    }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Matrix b(n, n);
    b(k, k) = 1.0;
    b(n - 1, n - 1) = -1.0;
    basis.push_back(std::move(b));
  }
  const std::size_t d = basis.size();
  if (d == 0) return std::nullopt;
  Matrix h(d, d);
  Vec g(d, 0.0);
  std::vector<Vec> bu(d);
  Vec q(d);
  for (const auto& atom : img.atoms) {
    for (std::size_t a = 0; a < d; ++a) {
      bu[a] = basis[a] * atom.normal;
      q[a] = dot(bu[a], atom.normal);
      g[a] += atom.weight * q[a];
    }
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) h(a, b) += 2.0 * atom.weight * (dot(bu[a], bu[b]) - 0.5 * q[a] * q[b]);
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < a; ++b) h(a, b) = h(b, a);
  Vec x;
  try {
    x = solve(h, g);
  } catch (const Error&) {
    return std::nullopt;
  }
  Matrix step(n, n);
  for (std::size_t a = 0; a < d; ++a) step = step + x[a] * basis[a];
  if (!step.finite()) return std::nullopt;
  return step;
}

Matrix random_sl(std::size_t n, Rng& rng, double eps) {
  Matrix m = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += eps * gaussian(rng);
  if (det(m) < 0.0)
    for (std::size_t j = 0; j < n; ++j) m(0, j) = -m(0, j);
  return normalize_det_one(m);
}

}  // namespace

PositionResult petty_minimize(const Polytope& k, const PettyOptions& opt) {
  const AreaMeasure s = k.area_measure();
  const std::size_t n = k.dim();
  {
    const EigenDecomposition e = sym_eig(covariance(s));
    if (!(e.values.back() > 1e-12 * e.values.front()))
      throw DegeneracyError("petty_minimize: area measure concentrated on a proper subspace");
  }

  PositionResult out;
  out.iq_before = k.iq();
  Rng rng(mix_seed(opt.seed, 0x5e77));
  Iterate cur = evaluate(s, Matrix::identity(n));
  Iterate best = cur;
  int iterations = 0, restarts = 0;
  double theta = 1.0;

  while (cur.residual >= opt.tol && iterations < opt.max_iter) {
    const SymMatrix c = covariance(pushforward_area_measure(s, cur.a));
    const SymMatrix scaled(static_cast<double>(n) / c.trace() * c.matrix());
    bool accepted = false;
    const auto accept = [&](Iterate& next) {
      // Near the optimum the objective is flat to rounding; the residual
      // (the gradient) decides there.
      return next.surface < cur.surface ||
             (next.surface <= cur.surface * (1.0 + 1e-13) && next.residual < cur.residual);
    };
    if (const auto x = newton_direction(pushforward_area_measure(s, cur.a))) {
      for (double t = 1.0; t > 1e-6 && !accepted; t *= 0.5) {
        Iterate next = evaluate(s, normalize_det_one(sym_exp(t * *x) * cur.a));
        if (accept(next)) {
          cur = std::move(next);
          accepted = true;
        }
      }
    }
    for (double t = theta; t > 1e-12 && !accepted; t *= 0.5) {
      Iterate next = evaluate(s, normalize_det_one(psd_power(scaled, t).matrix() * cur.a));
      if (accept(next)) {
        cur = std::move(next);
        theta = std::min(1.0, 2.0 * t);
        accepted = true;
      }
    }
    ++iterations;
    if (!accepted) {
      if (restarts >= opt.restarts) break;
      ++restarts;
      cur = evaluate(s, normalize_det_one(random_sl(n, rng, 1e-2) * cur.a));
      theta = 1.0;
    }
    if (cur.surface < best.surface || (cur.surface <= best.surface * (1.0 + 1e-13) && cur.residual < best.residual))
      best = cur;
  }

  out.a = best.a;
  out.iq_after = iq_from(best.surface, k.volume(), n);
  out.isotropy_residual = best.residual;
  out.schatten1_a = schatten1(best.a);
  out.iterations = iterations;
  out.restarts = restarts;
  out.certified = best.residual < opt.tol;
  return out;
}

SchattenCheck schatten_bound_check(const Polytope& k, const PositionResult& r) {
  SchattenCheck c;
  c.lhs = schatten1(r.a);
  c.rhs = static_cast<double>(k.dim()) * k.iq() / r.iq_after;
  c.slack = c.rhs - c.lhs;
  c.ok = c.lhs <= c.rhs + 1e-8;
  return c;
}

std::vector<Vec> slab_vectors(const HPolytope& h) {
  const auto& hs = h.halfspaces();
  std::vector<bool> used(hs.size(), false);
  std::vector<Vec> y;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (used[i]) continue;
    std::size_t partner = hs.size();
    for (std::size_t j = i + 1; j < hs.size(); ++j)
      if (!used[j] && norm(hs[i].normal + hs[j].normal) <= 1e-9 &&
          std::abs(hs[i].offset - hs[j].offset) <= 1e-9 * hs[i].offset) {
        partner = j;
        break;
      }
    if (partner == hs.size())
      throw StructuralError("slab_vectors: halfspace " + std::to_string(i) + " has no opposite partner");
    used[i] = used[partner] = true;
    y.push_back((1.0 / hs[i].offset) * hs[i].normal);
  }
  return y;
}

BLTransform bl_transform(std::size_t n, std::span<const Vec> y) {
  if (y.size() < n) throw DegeneracyError("bl_transform: fewer vectors than the dimension");
  SymMatrix m(n);
  for (const Vec& v : y) {
    if (v.size() != n) throw StructuralError("bl_transform: vector of the wrong dimension");
    m.add_outer(1.0, v);
  }
  const EigenDecomposition e = sym_eig(m);
  if (!(e.values.back() > 1e-12 * e.values.front()))
    throw DegeneracyError("bl_transform: the vectors do not span the space");

  BLTransform out;
  BLDecomposition& d = out.decomposition;
  d.b = psd_power(m, 0.5);
  const Matrix inv_half = psd_power(m, -0.5).matrix();
  SymMatrix id(n);
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Vec col = inv_half * y[i];
    const double ci = dot(col, col);
    if (ci < 1e-12) d.near_degenerate.push_back(i);
    const Vec u = normalized(col);
    d.c.push_back(ci);
    d.u.push_back(u);
    d.weight_sum += ci;
    id.add_outer(ci, u);
    hs.push_back({u, 1.0 / std::sqrt(ci)});
    hs.push_back({-1.0 * u, 1.0 / std::sqrt(ci)});
  }
  d.identity_residual = max_abs_diff(id.matrix(), Matrix::identity(n));
  out.body = HPolytope(n, std::move(hs));
  return out;
}

BLTransform bl_transform(const HPolytope& h) {
  const std::vector<Vec> y = slab_vectors(h);
  return bl_transform(h.dim(), y);
}

VolumeBoundCheck bl_volume_bound_check(const HPolytope& bk, const BLDecomposition& d, std::size_t samples,
                                       std::uint64_t seed, unsigned workers) {
  const std::size_t n = bk.dim();
  const double nn = static_cast<double>(n);
  VolumeBoundCheck r;
  double log_bound = 0.0;
  for (double c : d.c) log_bound += c / nn * std::log(2.0 / std::sqrt(c));
  r.product_bound = std::exp(log_bound);
  r.weak_bound = 2.0 * std::sqrt(static_cast<double>(d.c.size()) / nn);
  const double tol = 1e-12 * r.weak_bound;
  if (n <= kMaxHullDim) {
    r.exact = true;
    r.lhs = std::pow(Polytope::from_h(bk).volume(), 1.0 / nn);
    r.ok = r.lhs <= r.product_bound + tol && r.lhs <= r.weak_bound + tol;
  } else {
    r.exact = false;
    const VolumeEstimate v = mc_volume(bk, samples, seed, workers);
    r.lhs = std::pow(v.mean, 1.0 / nn);
    r.halfwidth = 4.0 * v.stderr_ * std::pow(v.mean, 1.0 / nn - 1.0) / nn;
    r.ok = r.lhs - r.halfwidth <= r.product_bound + tol && r.lhs - r.halfwidth <= r.weak_bound + tol;
  }
  return r;
}

}  // namespace isoperi
