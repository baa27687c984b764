#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bl/symmetry.hpp"

namespace bl {

/// Thrown when an operation requires |lambda_k| < 1 for k >= 1 and the chain
/// is periodic (the (1,1,1) chain has lambda_1 = -1).
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// rho_m(.; start) = pi_i + pi_i sum_{k>=1} lambda_k^m v_k(i) v_k(start),
/// i.e. column `start` of T^m. Exact.
std::vector<Rational> distribution_at(const SymmetricEigenSystem& sys, int start, long m);

/// Float backend for a fixed start state: exact coefficients converted once,
/// then geometric damping applied per step count (ascending-k compensated
/// sums, deterministic). When the per-call error estimate shows double
/// precision cannot deliver ~1e-12 (undamped huge coefficients at small m),
/// the exact sum is evaluated instead and rounded once. The referenced
/// system must outlive the evaluator.
class DistributionEvaluator {
 public:
  DistributionEvaluator(const SymmetricEigenSystem& sys, int start);

  std::vector<double> at(long m) const;
  double tv_to_stationary(long m) const;
  const std::vector<double>& pi() const { return pi_; }

  /// Absolute per-entry error estimate of the plain double evaluation.
  double error_estimate(long m) const;

 private:
  const SymmetricEigenSystem& sys_;
  int start_;
  int s_;
  std::vector<double> pi_, lambda_;
  std::vector<double> coeff_;      // a_k(i) = Delta_k^2 c_k(i) c_k(start) / pi_start
  std::vector<double> coeff_mag_;  // sum_i |a_k(i)| per k
};

std::vector<double> distribution_at_double(const SymmetricEigenSystem& sys, int start, long m);

/// Total-variation distance (1/2) sum_i |a_i - b_i|.
template <class S>
S tv_distance(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tv_distance: length mismatch");
  S sum{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    using std::abs;
    sum += abs(a[i] - b[i]);
  }
  return sum / S{2};
}

template <class S>
struct TvCurve {
  ModelParams params;
  int start = 0;
  std::vector<long> steps;
  std::vector<S> tv;
};

TvCurve<double> tv_curve(const SymmetricEigenSystem& sys, int start, const std::vector<long>& steps);
TvCurve<Rational> tv_curve_exact(const SymmetricEigenSystem& sys, int start,
                                 const std::vector<long>& steps);

enum class BoundKind { kUpper, kLower };

/// Mixing-time bound at parameter c for the balanced chain (n1 = n2):
///   upper: m = round(n ln n / 4 + (c/2 - ln2/8) n),  bound = constant e^{-2c}
///   lower: m = round(n ln n / 8 - c n / 2),          2*TV >= 1 - constant e^{4c}
/// The universal constants are caller-supplied (default 1 in the CLI).
struct BoundSpec {
  BoundKind kind;
  double c = 0;
  long m = 0;
  double bound = 0;
};

BoundSpec mixing_bound(const ModelParams& params, BoundKind kind, double c, double constant);

/// E_pi[ || rho_m(.; j) - pi ||_TV ] = sum_j pi_j tv_j(m), the quantity the
/// upper bound controls, evaluated with no Cauchy-Schwarz slack.
struct ExpectedTv {
  double average = 0;
  std::vector<double> per_state;
};

ExpectedTv expected_bound_check(const SymmetricEigenSystem& sys, long m);
Rational expected_tv_exact(const SymmetricEigenSystem& sys, long m);

/// E_{rho_m(.;start)}[v_k], checked against lambda_k^m v_k(start) within
/// 1e-9 relative; throws std::logic_error on disagreement.
double eigen_moment(const SymmetricEigenSystem& sys, int start, long m, int k);

/// The same identity with the common Delta_k factor cancelled, so both sides
/// are exact rationals: sum_i v_hat_k(i) rho_m(i;start) vs lambda_k^m
/// v_hat_k(start).
struct EigenMomentIdentity {
  Rational lhs, rhs;
  bool holds = false;
};

EigenMomentIdentity eigen_moment_exact(const SymmetricEigenSystem& sys, int start, long m, int k);

/// E_dist[v^2] - (E_dist[v])^2.
template <class S>
S variance_under(const std::vector<S>& dist, const std::vector<S>& v) {
  if (dist.size() != v.size()) throw std::invalid_argument("variance_under: length mismatch");
  S mean{}, second{};
  for (std::size_t i = 0; i < dist.size(); ++i) {
    mean += dist[i] * v[i];
    second += dist[i] * v[i] * v[i];
  }
  return second - mean * mean;
}

/// Var_dist(v_k) exactly: Delta_k^2 (E_dist[v_hat^2] - E_dist[v_hat]^2).
Rational variance_under_exact(const SymmetricEigenSystem& sys, int k,
                              const std::vector<Rational>& dist);

/// Smallest m with tv(m) <= epsilon, by doubling then bisection; the crossing
/// is verified locally (tv(m) <= epsilon < tv(m-1)) rather than assuming
/// monotonicity. Throws NonConvergence for periodic chains.
long cutoff_scan(const SymmetricEigenSystem& sys, int start, double epsilon);

}  // namespace bl
