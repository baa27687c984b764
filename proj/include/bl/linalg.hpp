#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bl/rational.hpp"

namespace bl {

/// Minimal dense row-major matrix over an exact or floating scalar.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, const S& fill = S{})
      : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative extent");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S{1};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<S> column(int j) const {
    std::vector<S> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: incompatible product");
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& x) {
    if (a.cols_ != static_cast<int>(x.size()))
      throw std::invalid_argument("Matrix: incompatible matrix-vector product");
    std::vector<S> y(a.rows_, S{});
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }

 private:
  int rows_, cols_;
  std::vector<S> d_;
};

inline std::vector<double> to_double(const std::vector<Rational>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

inline Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

/// Exact determinant by Gaussian elimination with nonzero pivoting.
Rational determinant(Matrix<Rational> a);

}  // namespace bl
