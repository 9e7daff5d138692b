#include "isoperi/lp.hpp"

#include <cmath>
#include <limits>

namespace isoperi::lp {

namespace {

constexpr double kEps = 1e-11;

// Dictionary form: rows 0..m-1 are constraints, row m is the objective,
// row m+1 the phase-one objective. Column n+1 holds the right-hand side;
// column n is the auxiliary variable. basis[i] / nonbasis[j] map tableau
// slots to variable ids (0..n-1 structural, n..n+m-1 slacks, -1 aux).
class Tableau {
 public:
  Tableau(const Matrix& a, const Vec& b, const Vec& c)
      : m_(a.rows()), n_(a.cols()), d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)),
        basis_(m_), nonbasis_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a(i, j);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  Result run() {
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!simplex(1) || d_[m_ + 1][n_ + 1] < -1e-9) return {Status::kInfeasible, 0.0, {}};
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] == -1) {
          std::size_t s = 0;
          for (std::size_t j = 1; j <= n_; ++j)
            if (d_[i][j] < d_[i][s] || (d_[i][j] == d_[i][s] && nonbasis_[j] < nonbasis_[s]))
              s = j;
          pivot(i, s);
        }
    }
    if (!simplex(2)) return {Status::kUnbounded, std::numeric_limits<double>::infinity(), {}};
    Result res{Status::kOptimal, d_[m_][n_ + 1], Vec(n_, 0.0)};
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
        res.x[static_cast<std::size_t>(basis_[i])] = d_[i][n_ + 1];
    return res;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = d_[i][s] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (j != s) d_[i][j] -= d_[r][j] * f;
      d_[i][s] = -f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) d_[r][j] *= inv;
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // phase 1 optimizes row m+1, phase 2 row m. Bland's rule on ties.
  bool simplex(int phase) {
    const std::size_t obj = phase == 1 ? m_ + 1 : m_;
    for (;;) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (s == n_ + 1 || d_[obj][j] < d_[obj][s] ||
            (d_[obj][j] == d_[obj][s] && nonbasis_[j] < nonbasis_[s]))
          s = j;
      }
      if (s == n_ + 1 || d_[obj][s] > -kEps) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] < kEps) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        const double lhs = d_[i][n_ + 1] / d_[i][s];
        const double rhs = d_[r][n_ + 1] / d_[r][s];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = i;
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<double>> d_;
  std::vector<long> basis_, nonbasis_;
};

}  // namespace

Result maximize_nonneg(const Matrix& a, const Vec& b, const Vec& c) {
  Tableau t(a, b, c);
  return t.run();
}

Result maximize_free(const Matrix& a, const Vec& b, const Vec& c) {
  const std::size_t n = a.cols();
  Matrix split(a.rows(), 2 * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      split(i, j) = a(i, j);
      split(i, n + j) = -a(i, j);
    }
  Vec cs(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    cs[j] = c[j];
    cs[n + j] = -c[j];
  }
  Result r = maximize_nonneg(split, b, cs);
  if (r.status == Status::kOptimal) {
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = r.x[j] - r.x[n + j];
    r.x = std::move(x);
  }
  return r;
}

}  // namespace isoperi::lp
