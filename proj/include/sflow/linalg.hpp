#pragma once

// Small dense real matrices and a cyclic Jacobi eigensolver. Sizes in this
// library stay in the tens, so everything is row-major std::vector storage
// with O(n^3) kernels.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace sflow {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  Matrix transpose() const;
  // (A + A^T) / 2
  Matrix symmetrized() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
// Largest singular value.
double spectral_norm(const Matrix& a);
// ||A - A^T||_max
double asymmetry(const Matrix& a);

Matrix block_diagonal(const Matrix& a, const Matrix& b);
// Columns of a followed by columns of b.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
// Sub-block [r0, r0+nr) x [c0, c0+nc).
Matrix block(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc);

// Solve A X = B by Gaussian elimination with partial pivoting.
Matrix solve(const Matrix& a, const Matrix& b);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops to
// 1e-13 * ||A||_F; at most 100 sweeps, otherwise EigenFailure. The input is
// symmetrized first. Eigenvectors are sign-normalized so that their largest
// component (first one on ties) is positive, which makes output deterministic.
SymmetricEigen eigh(const Matrix& a);

// V f(D) V^T for a symmetric eigendecomposition.
Matrix spectral_function(const SymmetricEigen& eig, const std::function<double(double)>& f);

// Orthogonal projection onto the column span of an orthonormal frame.
Matrix projector(const Matrix& frame);

// max |F^T F - I|
double orthonormality_defect(const Matrix& frame);

}  // namespace sflow
