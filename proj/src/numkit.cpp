#include "isoperi/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "isoperi/errors.hpp"

namespace isoperi {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(double s, const Vec& a) {
  Vec r(a);
  for (double& x : r) x *= s;
  return r;
}

Vec normalized(const Vec& a) {
  const double l = norm(a);
  if (!(l > 0.0)) throw SingularityError("cannot normalize a zero vector");
  return (1.0 / l) * a;
}

Vec unit_vector(std::size_t dim, std::size_t axis) {
  Vec e(dim, 0.0);
  e.at(axis) = 1.0;
  return e;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_columns(std::span<const Vec> cols) {
  if (cols.empty()) return {};
  Matrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool Matrix::finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// ------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(std::size_t n) : m_(n, n) {
  if (n == 0 || n > kMaxDim) throw SizeError("symmetric matrix dimension out of range");
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m.rows(), m.cols()) {
  if (!m.square()) throw std::invalid_argument("SymMatrix needs a square matrix");
  if (m.rows() == 0 || m.rows() > kMaxDim)
    throw SizeError("symmetric matrix dimension out of range");
  if (!m.finite()) throw std::invalid_argument("SymMatrix entries must be finite");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m_(i, j) = 0.5 * (m(i, j) + m(j, i));
}

void SymMatrix::add_symmetric(std::size_t i, std::size_t j, double s) {
  m_(i, j) += s;
  if (i != j) m_(j, i) += s;
}

void SymMatrix::add_outer(double w, std::span<const double> u) {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = w * u[i] * u[j];
      m_(i, j) += v;
      if (i != j) m_(j, i) += v;
    }
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

// -------------------------------------------------------------- sym_eig

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRel = 1e-14;
constexpr double kPsdTol = 1e-10;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& s) {
  const std::size_t n = s.dim();
  Matrix a = s.matrix();
  Matrix v = Matrix::identity(n);
  const double threshold = kOffDiagRel * frobenius(a);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation annihilating a(p,q) (Golub & Van Loan, sym.schur2).
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm(a) > threshold) {
    std::ostringstream msg;
    msg << "Jacobi eigensolver did not converge after " << kMaxSweeps
        << " sweeps; off-diagonal residual " << off_diagonal_norm(a);
    throw ConvergenceError(msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  EigenDecomposition out{Vec(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

SymMatrix psd_power(const SymMatrix& s, double p) {
  const EigenDecomposition e = sym_eig(s);
  const std::size_t n = s.dim();
  const double scale = std::max(1.0, std::abs(e.values.front()));
  Vec lam(n);
  for (std::size_t k = 0; k < n; ++k) {
    double l = e.values[k];
    if (l < -kPsdTol * scale) {
      std::ostringstream msg;
      msg << "matrix is not positive semidefinite: eigenvalue " << l;
      throw NotPsdError(msg.str());
    }
    if (l < 0.0) l = 0.0;
    if (p < 0.0 && l <= kPsdTol * scale)
      throw SingularityError("negative power of a singular matrix");
    lam[k] = (p == 1.0) ? l : (p == 0.5 ? std::sqrt(l) : std::pow(l, p));
  }
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += e.vectors(i, k) * lam[k] * e.vectors(j, k);
      r(i, j) = acc;
      r(j, i) = acc;
    }
  return SymMatrix(r);
}

// --------------------------------------------------- LU with partial pivot

namespace {

struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

Lu lu_decompose(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("LU needs a square matrix");
  const std::size_t n = m.rows();
  Lu f{m, std::vector<std::size_t>(n), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
    if (f.lu(piv, k) == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

Vec lu_solve(const Lu& f, std::span<const double> b) {
  const std::size_t n = f.lu.rows();
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x[j];
    x[ii] = s / f.lu(ii, ii);
  }
  return x;
}

bool numerically_singular(const Lu& f, const Matrix& m) {
  if (f.singular) return true;
  const double scale = std::max(m.max_abs(), 1e-300);
  for (std::size_t i = 0; i < f.lu.rows(); ++i)
    if (std::abs(f.lu(i, i)) <= 1e-14 * scale) return true;
  return false;
}

}  // namespace

double det(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  const Lu f = lu_decompose(m);
  if (f.singular) return 0.0;
  double d = f.sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= f.lu(i, i);
  return d;
}

Vec solve(const Matrix& a, std::span<const double> b) {
  const Lu f = lu_decompose(a);
  if (numerically_singular(f, a)) throw SingularityError("linear system is singular");
  return lu_solve(f, b);
}

Matrix inverse(const Matrix& m) {
  const Lu f = lu_decompose(m);
  if (numerically_singular(f, m)) throw SingularityError("matrix is singular");
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  Vec e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vec col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

Matrix normalize_det_one(const Matrix& m) {
  const double d = det(m);
  if (!(d > 0.0))
    throw SingularityError("normalize_det_one needs a positive determinant");
  const double n = static_cast<double>(m.rows());
  return std::pow(d, -1.0 / n) * m;
}

double schatten1(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("schatten1 of a non-square matrix");
  const EigenDecomposition e = sym_eig(SymMatrix(m.transposed() * m));
  double s = 0.0;
  for (double l : e.values) s += std::sqrt(std::max(l, 0.0));
  return s;
}

}  // namespace isoperi
