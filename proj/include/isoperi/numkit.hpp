#pragma once

// Dense linear algebra for desk-scale dimensions: a row-major matrix, a
// symmetric wrapper, cyclic Jacobi eigendecomposition and the handful of
// matrix functions the geometry code needs.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace isoperi {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);
Vec normalized(const Vec& a);
Vec unit_vector(std::size_t dim, std::size_t axis);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  // Columns are the given vectors (all of equal length).
  static Matrix from_columns(std::span<const Vec> cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;
  Matrix transposed() const;
  double max_abs() const;
  bool finite() const;

  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, std::span<const double> x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

// Largest entrywise difference; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

// Symmetric matrix, stored exactly symmetric: the constructor averages the
// two triangles of its argument. Dimension is capped at kMaxDim.
class SymMatrix {
 public:
  static constexpr std::size_t kMaxDim = 16;

  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  explicit SymMatrix(std::size_t n);

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  // Adds s to (i,j) and (j,i) (once on the diagonal).
  void add_symmetric(std::size_t i, std::size_t j, double s);
  // this += w * u u^T
  void add_outer(double w, std::span<const double> u);

  double trace() const;
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  Vec values;      // descending
  Matrix vectors;  // orthonormal columns, vectors.column(k) pairs with values[k]
};

// Cyclic Jacobi. Throws ConvergenceError after the sweep cap.
EigenDecomposition sym_eig(const SymMatrix& s);

// Q diag(lambda^p) Q^T. Eigenvalues in [-tol, 0] are clamped to zero;
// anything more negative is NotPsdError, and p < 0 on a singular matrix is
// SingularityError.
SymMatrix psd_power(const SymMatrix& s, double p);

double det(const Matrix& m);
Matrix inverse(const Matrix& m);
Vec solve(const Matrix& a, std::span<const double> b);

// det(M)^(-1/n) M. Requires det(M) > 0.
Matrix normalize_det_one(const Matrix& m);

// Sum of singular values.
double schatten1(const Matrix& m);

}  // namespace isoperi
