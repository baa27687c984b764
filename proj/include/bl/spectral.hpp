#pragma once

#include <vector>

#include "bl/model.hpp"

namespace bl {

/// lambda_k = 1 - k(n-k+1)/(n1 n2), k = 0..nw. Strictly decreasing, all in
/// [-1, 1] for canonical params.
Rational eigenvalue(const ModelParams& params, int k);
std::vector<Rational> spectrum(const ModelParams& params);

/// Eigenvector coordinates in the triangular (Pascal-transformed) space,
/// normalized to b_k = 1; b_i = 0 for i < k.
struct TriangularCoefficients {
  int k = 0;
  std::vector<Rational> b;
};

/// Computes b by both the running-product recursion and the Pochhammer
/// closed form and insists they agree exactly.
TriangularCoefficients b_coefficients(const ModelParams& params, int k);

/// Inverse Pascal transform: c_i = sum_{j>=i} (-1)^{j-i} C(j,i) b_j.
std::vector<Rational> pascal_to_c(const std::vector<Rational>& b);
std::vector<Rational> pascal_to_c(const TriangularCoefficients& b);

/// Forward Pascal transform: b_j = sum_{i>=j} C(i,j) c_i. Inverse of
/// pascal_to_c (exact round trip).
std::vector<Rational> c_to_b(const std::vector<Rational>& c);

Matrix<Rational> pascal_forward(int size);  // b = P c
Matrix<Rational> pascal_inverse(int size);  // c = P^{-1} b

/// Original-space eigenvector from the terminating 2F1 expansion
///   c_i = sum_n C(k,n) (-1)^n (k-n1)_{i-n} (k-nw)_{i-n} / ((n2-nw+1)_{i-n} (i-n)!),
/// normalized so that c_0 = 1. Requires canonical params (n2 >= nw).
std::vector<Rational> c_hypergeometric(const ModelParams& params, int k);

/// Lower-bidiagonal similar image T' = P T P^{-1}:
///   T'_{ii} = 1 - (i(nw-i) + (nb+1)i)/(n1 n2),
///   T'_{i,i-1} = (n1-i+1)(nw-i+1)/(n1 n2).
Matrix<Rational> triangularized_matrix(const ModelParams& params);

/// Matrix S whose k-th column is the hypergeometric eigenvector c_k;
/// satisfies T S = S diag(spectrum) exactly and det(S) != 0.
Matrix<Rational> eigen_basis(const ModelParams& params);

}  // namespace bl
