#pragma once

#include <vector>

#include "bl/model.hpp"
#include "bl/spectral.hpp"

namespace bl {

/// Orthogonalizing weight of one right eigenvector: 1 / sum_i c_k(i)^2 / pi_i.
/// Scale-covariant in c_k (Delta^2 ~ 1/s^2); the products
/// Delta_k^2 c_k(i) c_k(j) are normalization-invariant.
Rational delta_sq(const ModelParams& params, const std::vector<Rational>& c_k);

/// Full eigensystem in the symmetrizing inner product.
///
/// Exact citizens: pi, lambda, the sign-fixed basis c (columns scaled so
/// c_k(0) > 0), delta_sq, and v_hat(i,k) = c_k(i)/pi_i. The pi-orthonormal
/// right system is v_k = Delta_k * v_hat_k and the orthonormal system of Z is
/// w_k = Delta_k sqrt(pi_i) v_hat_k; both carry a square root, so v and w are
/// float while every pairwise product stays exact via v_pair.
struct SymmetricEigenSystem {
  ModelParams params;
  std::vector<Rational> pi;
  std::vector<Rational> lambda;
  Matrix<Rational> c;         // (i, k)
  std::vector<Rational> delta_sq;
  Matrix<Rational> v_hat;     // (i, k)
  Matrix<double> w;           // (i, k), w_k(0) > 0
  Matrix<double> v;           // (i, k)

  int states() const { return params.states(); }

  /// v_k(i) * v_k(j), exactly.
  Rational v_pair(int k, int i, int j) const {
    return delta_sq[k] * v_hat(i, k) * v_hat(j, k);
  }
};

/// Builds the system from the hypergeometric eigen_basis.
SymmetricEigenSystem symmetric_system(const ModelParams& params);

/// Same, from a caller-supplied basis (columns = right eigenvectors; any
/// nonzero scaling). Columns are sign-fixed so c_k(0) > 0.
SymmetricEigenSystem symmetric_system(const ModelParams& params, Matrix<Rational> basis);

/// Z = D^{-1} T D with D = diag(sqrt(pi_i)); symmetric by detailed balance.
/// Entries are computed as sqrt(T_ij T_ji) so the float matrix is symmetric
/// bit-for-bit.
Matrix<double> symmetrized_matrix(const ModelParams& params);

/// T^m via the spectral decomposition
///   (T^m)_{ij} = (1/pi_j) sum_k Delta_k^2 lambda_k^m c_k(i) c_k(j),
/// exact for any m >= 0.
Matrix<Rational> spectral_power(const SymmetricEigenSystem& sys, long m);

/// Float-backend spectral power: coefficients are converted from their exact
/// values once, then combined per entry in ascending-k order with compensated
/// summation, so results are bit-reproducible across runs.
///
/// At small m the undamped coefficients can dwarf the result (they reach
/// ~1/sqrt(pi_min) and cancel to O(1)); a per-call error estimate
/// eps * sum_k |lambda_k|^m max_j sum_i |a_k(i,j)| detects this and falls
/// back to the exact sum, rounded once at the end. The referenced system
/// must outlive the evaluator.
class SpectralPowerEvaluator {
 public:
  explicit SpectralPowerEvaluator(const SymmetricEigenSystem& sys);
  Matrix<double> power(long m) const;

  /// Absolute per-entry error estimate of the plain double evaluation.
  double error_estimate(long m) const;

 private:
  const SymmetricEigenSystem& sys_;
  int s_;
  std::vector<double> lambda_;
  std::vector<double> coeff_;      // a_k(i,j) = Delta_k^2 c_k(i) c_k(j) / pi_j
  std::vector<double> coeff_mag_;  // max_j sum_i |a_k(i,j)| per k
};

Matrix<double> spectral_power_double(const SymmetricEigenSystem& sys, long m);

}  // namespace bl
