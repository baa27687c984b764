#include "bl/linalg.hpp"

namespace bl {

Rational determinant(Matrix<Rational> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: square matrix required");
  const int n = a.rows();
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!a(row, col).is_zero()) { pivot = row; break; }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int j = col; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const Rational inv = Rational(1) / a(col, col);
    for (int row = col + 1; row < n; ++row) {
      if (a(row, col).is_zero()) continue;
      const Rational f = a(row, col) * inv;
      for (int j = col; j < n; ++j) a(row, j) -= f * a(col, j);
    }
  }
  return det;
}

}  // namespace bl
