#include "bl/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace bl {

Rational delta_sq(const ModelParams& params, const std::vector<Rational>& c_k) {
  if (static_cast<int>(c_k.size()) != params.states())
    throw std::invalid_argument("delta_sq: eigenvector length mismatch");
  const auto pi = stationary_distribution(params);
  Rational sum(0);
  bool nonzero = false;
  for (int i = 0; i < params.states(); ++i) {
    if (!c_k[i].is_zero()) nonzero = true;
    sum += c_k[i] * c_k[i] / pi[i];
  }
  if (!nonzero) throw std::invalid_argument("delta_sq: zero eigenvector");
  return Rational(1) / sum;
}

SymmetricEigenSystem symmetric_system(const ModelParams& params) {
  return symmetric_system(params, eigen_basis(params));
}

SymmetricEigenSystem symmetric_system(const ModelParams& params, Matrix<Rational> basis) {
  const int s = params.states();
  if (basis.rows() != s || basis.cols() != s)
    throw std::invalid_argument("symmetric_system: basis must be states x states");

  SymmetricEigenSystem sys;
  sys.params = params;
  sys.pi = stationary_distribution(params);
  sys.lambda = spectrum(params);

  // Sign convention w_k(0) > 0; every genuine eigenvector has c_k(0) != 0
  // (the hypergeometric normalization puts it at 1).
  for (int k = 0; k < s; ++k) {
    const int sign = basis(0, k).sign();
    if (sign == 0)
      throw std::invalid_argument("symmetric_system: basis column vanishes at state 0");
    if (sign < 0)
      for (int i = 0; i < s; ++i) basis(i, k) = -basis(i, k);
  }
  sys.c = std::move(basis);

  sys.delta_sq.reserve(s);
  for (int k = 0; k < s; ++k) sys.delta_sq.push_back(delta_sq(params, sys.c.column(k)));

  sys.v_hat = Matrix<Rational>(s, s);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k) sys.v_hat(i, k) = sys.c(i, k) / sys.pi[i];

  sys.w = Matrix<double>(s, s);
  sys.v = Matrix<double>(s, s);
  for (int k = 0; k < s; ++k) {
    const double dk = std::sqrt(sys.delta_sq[k].to_double());
    for (int i = 0; i < s; ++i) {
      // w_k(i) = sqrt(Delta_k^2 * pi_i) * v_hat(i,k), computed from the exact
      // product so the square root is the only rounding step.
      sys.w(i, k) = std::sqrt((sys.delta_sq[k] * sys.pi[i]).to_double()) * sys.v_hat(i, k).to_double();
      sys.v(i, k) = dk * sys.v_hat(i, k).to_double();
    }
  }
  return sys;
}

Matrix<double> symmetrized_matrix(const ModelParams& params) {
  const auto t = build_kernel(params).dense();
  const int s = params.states();
  Matrix<double> z(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      // Detailed balance gives T_ij sqrt(pi_j/pi_i) = sqrt(T_ij T_ji).
      const double e = std::sqrt((t(i, j) * t(j, i)).to_double());
      z(i, j) = e;
      z(j, i) = e;
    }
  return z;
}

Matrix<Rational> spectral_power(const SymmetricEigenSystem& sys, long m) {
  if (m < 0) throw std::invalid_argument("spectral_power: m must be >= 0");
  const int s = sys.states();
  std::vector<Rational> lam_m(s);
  for (int k = 0; k < s; ++k) lam_m[k] = Rational::pow(sys.lambda[k], m);

  Matrix<Rational> out(s, s);
  for (int j = 0; j < s; ++j) {
    std::vector<Rational> g(s);  // lambda_k^m Delta_k^2 c_k(j) / pi_j
    for (int k = 0; k < s; ++k) g[k] = lam_m[k] * sys.delta_sq[k] * sys.c(j, k) / sys.pi[j];
    for (int i = 0; i < s; ++i) {
      Rational acc(0);
      for (int k = 0; k < s; ++k) acc += g[k] * sys.c(i, k);
      out(i, j) = acc;
    }
  }
  return out;
}

namespace {
constexpr double kFloatErrorBudget = 1e-12;
}

SpectralPowerEvaluator::SpectralPowerEvaluator(const SymmetricEigenSystem& sys)
    : sys_(sys), s_(sys.states()), lambda_(to_double(sys.lambda)), coeff_(), coeff_mag_(s_, 0.0) {
  coeff_.resize(static_cast<std::size_t>(s_) * s_ * s_);
  std::vector<double> col_sum(static_cast<std::size_t>(s_) * s_, 0.0);
  for (int i = 0; i < s_; ++i)
    for (int j = 0; j < s_; ++j) {
      const std::size_t base = (static_cast<std::size_t>(i) * s_ + j) * s_;
      for (int k = 0; k < s_; ++k) {
        const double a = (sys.delta_sq[k] * sys.c(i, k) * sys.c(j, k) / sys.pi[j]).to_double();
        coeff_[base + k] = a;
        col_sum[static_cast<std::size_t>(k) * s_ + j] += std::abs(a);
      }
    }
  for (int k = 0; k < s_; ++k)
    for (int j = 0; j < s_; ++j)
      coeff_mag_[k] = std::max(coeff_mag_[k], col_sum[static_cast<std::size_t>(k) * s_ + j]);
}

double SpectralPowerEvaluator::error_estimate(long m) const {
  double est = 0.0;
  for (int k = 0; k < s_; ++k)
    est += std::pow(std::abs(lambda_[k]), static_cast<double>(m)) * coeff_mag_[k];
  return est * 4.0 * 2.220446049250313e-16;
}

Matrix<double> SpectralPowerEvaluator::power(long m) const {
  if (m < 0) throw std::invalid_argument("SpectralPowerEvaluator: m must be >= 0");
  if (error_estimate(m) > kFloatErrorBudget) return to_double(spectral_power(sys_, m));
  std::vector<double> lam_m(s_);
  for (int k = 0; k < s_; ++k) lam_m[k] = std::pow(lambda_[k], static_cast<double>(m));
  Matrix<double> out(s_, s_);
  for (int i = 0; i < s_; ++i)
    for (int j = 0; j < s_; ++j) {
      const std::size_t base = (static_cast<std::size_t>(i) * s_ + j) * s_;
      double sum = 0.0, comp = 0.0;  // Kahan, fixed k order
      for (int k = 0; k < s_; ++k) {
        const double term = lam_m[k] * coeff_[base + k] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
      }
      out(i, j) = sum;
    }
  return out;
}

Matrix<double> spectral_power_double(const SymmetricEigenSystem& sys, long m) {
  return SpectralPowerEvaluator(sys).power(m);
}

}  // namespace bl
