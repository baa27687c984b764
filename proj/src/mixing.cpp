#include "bl/mixing.hpp"

#include <algorithm>
#include <cmath>

namespace bl {

namespace {

void require_start(const SymmetricEigenSystem& sys, int start, const char* who) {
  if (start < 0 || start >= sys.states())
    throw std::out_of_range(std::string(who) + ": start state out of range");
}

double kahan_sum(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (const double t : terms) {
    const double y = t - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  return sum;
}

}  // namespace

std::vector<Rational> distribution_at(const SymmetricEigenSystem& sys, int start, long m) {
  require_start(sys, start, "distribution_at");
  if (m < 0) throw std::invalid_argument("distribution_at: m must be >= 0");
  const int s = sys.states();
  std::vector<Rational> g(s);  // lambda_k^m Delta_k^2 c_k(start) / pi_start
  for (int k = 0; k < s; ++k)
    g[k] = Rational::pow(sys.lambda[k], m) * sys.delta_sq[k] * sys.c(start, k) / sys.pi[start];
  std::vector<Rational> rho(s, Rational(0));
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k) rho[i] += g[k] * sys.c(i, k);
  return rho;
}

namespace {
constexpr double kFloatErrorBudget = 1e-12;
}

DistributionEvaluator::DistributionEvaluator(const SymmetricEigenSystem& sys, int start)
    : sys_(sys), start_(start), s_(sys.states()), pi_(to_double(sys.pi)),
      lambda_(to_double(sys.lambda)), coeff_mag_(s_, 0.0) {
  require_start(sys, start, "DistributionEvaluator");
  coeff_.resize(static_cast<std::size_t>(s_) * s_);
  for (int i = 0; i < s_; ++i)
    for (int k = 0; k < s_; ++k) {
      const double a = (sys.delta_sq[k] * sys.c(i, k) * sys.c(start, k) / sys.pi[start]).to_double();
      coeff_[static_cast<std::size_t>(i) * s_ + k] = a;
      coeff_mag_[k] += std::abs(a);
    }
}

double DistributionEvaluator::error_estimate(long m) const {
  double est = 0.0;
  for (int k = 0; k < s_; ++k)
    est += std::pow(std::abs(lambda_[k]), static_cast<double>(m)) * coeff_mag_[k];
  return est * 4.0 * 2.220446049250313e-16;
}

std::vector<double> DistributionEvaluator::at(long m) const {
  if (m < 0) throw std::invalid_argument("DistributionEvaluator: m must be >= 0");
  if (error_estimate(m) > kFloatErrorBudget) return to_double(distribution_at(sys_, start_, m));
  std::vector<double> lam_m(s_);
  for (int k = 0; k < s_; ++k) lam_m[k] = std::pow(lambda_[k], static_cast<double>(m));
  std::vector<double> rho(s_);
  for (int i = 0; i < s_; ++i) {
    double sum = 0.0, comp = 0.0;
    const std::size_t base = static_cast<std::size_t>(i) * s_;
    for (int k = 0; k < s_; ++k) {
      const double term = lam_m[k] * coeff_[base + k] - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
    }
    rho[i] = sum;
  }
  return rho;
}

double DistributionEvaluator::tv_to_stationary(long m) const {
  const auto rho = at(m);
  std::vector<double> diffs(s_);
  for (int i = 0; i < s_; ++i) diffs[i] = std::abs(rho[i] - pi_[i]);
  return 0.5 * kahan_sum(diffs);
}

std::vector<double> distribution_at_double(const SymmetricEigenSystem& sys, int start, long m) {
  return DistributionEvaluator(sys, start).at(m);
}

TvCurve<double> tv_curve(const SymmetricEigenSystem& sys, int start,
                         const std::vector<long>& steps) {
  if (steps.empty()) throw std::invalid_argument("tv_curve: empty step list");
  DistributionEvaluator eval(sys, start);
  TvCurve<double> curve{sys.params, start, steps, {}};
  curve.tv.reserve(steps.size());
  for (const long m : steps) curve.tv.push_back(eval.tv_to_stationary(m));
  return curve;
}

TvCurve<Rational> tv_curve_exact(const SymmetricEigenSystem& sys, int start,
                                 const std::vector<long>& steps) {
  if (steps.empty()) throw std::invalid_argument("tv_curve_exact: empty step list");
  TvCurve<Rational> curve{sys.params, start, steps, {}};
  curve.tv.reserve(steps.size());
  for (const long m : steps)
    curve.tv.push_back(tv_distance(distribution_at(sys, start, m), sys.pi));
  return curve;
}

BoundSpec mixing_bound(const ModelParams& params, BoundKind kind, double c, double constant) {
  if (params.n1 != params.n2)
    throw std::invalid_argument("mixing_bound: stated for the balanced case n1 = n2 only");
  if (constant <= 0) throw std::invalid_argument("mixing_bound: constant must be > 0");
  const double n = params.n();
  BoundSpec spec;
  spec.kind = kind;
  spec.c = c;
  if (kind == BoundKind::kUpper) {
    spec.m = std::lround(0.25 * n * std::log(n) + (c / 2.0 - std::log(2.0) / 8.0) * n);
    spec.bound = constant * std::exp(-2.0 * c);
  } else {
    spec.m = std::lround(0.125 * n * std::log(n) - c * n / 2.0);
    spec.bound = 1.0 - constant * std::exp(4.0 * c);
  }
  return spec;
}

ExpectedTv expected_bound_check(const SymmetricEigenSystem& sys, long m) {
  const int s = sys.states();
  ExpectedTv out;
  out.per_state.resize(s);
  std::vector<double> weighted(s);
  const auto pi = to_double(sys.pi);
  for (int j = 0; j < s; ++j) {
    out.per_state[j] = DistributionEvaluator(sys, j).tv_to_stationary(m);
    weighted[j] = pi[j] * out.per_state[j];
  }
  out.average = kahan_sum(weighted);
  return out;
}

Rational expected_tv_exact(const SymmetricEigenSystem& sys, long m) {
  if (m < 0) throw std::invalid_argument("expected_tv_exact: m must be >= 0");
  const int s = sys.states();
  const int nw = sys.params.nw;

  // The mpq additions in the naive triple loop spend most of their time in
  // per-term gcd normalization; accumulating each column over one common
  // denominator in raw integer arithmetic avoids that entirely.
  std::vector<Rational> lam_m(s);
  mpz_class q_den(1);
  for (int k = 0; k < s; ++k) {
    lam_m[k] = Rational::pow(sys.lambda[k], m);
    mpz_lcm(q_den.get_mpz_t(), q_den.get_mpz_t(), lam_m[k].den().get_mpz_t());
  }
  std::vector<mpz_class> z(s);  // lambda_k^m scaled to denominator q_den
  for (int k = 0; k < s; ++k) z[k] = lam_m[k].num() * mpz_class(q_den / lam_m[k].den());

  mpz_class c_den(1);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k)
      mpz_lcm(c_den.get_mpz_t(), c_den.get_mpz_t(), sys.c(i, k).den().get_mpz_t());
  std::vector<mpz_class> c_int(static_cast<std::size_t>(s) * s);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k)
      c_int[static_cast<std::size_t>(i) * s + k] =
          sys.c(i, k).num() * mpz_class(c_den / sys.c(i, k).den());

  // pi over its shared denominator C(n, n1).
  const mpz_class pi_den = binomial_mpz(sys.params.n(), sys.params.n1);
  std::vector<mpz_class> pi_num(s);
  for (int i = 0; i < s; ++i) pi_num[i] = sys.pi[i].num() * mpz_class(pi_den / sys.pi[i].den());

  // For n1 = n2 the chain commutes with the reflection i -> nw - i, so
  // tv_j = tv_{nw-j} and only half the starts are needed.
  const bool mirrored = sys.params.n1 == sys.params.n2;
  const int j_last = mirrored ? nw / 2 : nw;

  Rational expected(0);
  std::vector<mpz_class> y(s);
  for (int j = 0; j <= j_last; ++j) {
    mpz_class g_den(1);
    std::vector<Rational> g0(s);
    for (int k = 0; k < s; ++k) {
      g0[k] = sys.delta_sq[k] * sys.c(j, k) / sys.pi[j];
      mpz_lcm(g_den.get_mpz_t(), g_den.get_mpz_t(), g0[k].den().get_mpz_t());
    }
    for (int k = 0; k < s; ++k) y[k] = z[k] * g0[k].num() * mpz_class(g_den / g0[k].den());

    const mpz_class col_den = q_den * g_den * c_den;  // rho(i;j) = col[i] / col_den
    mpz_class tv_num(0), diff;
    for (int i = 0; i < s; ++i) {
      mpz_class acc(0);
      const std::size_t base = static_cast<std::size_t>(i) * s;
      for (int k = 0; k < s; ++k) acc += y[k] * c_int[base + k];
      diff = acc * pi_den - pi_num[i] * col_den;
      tv_num += abs(diff);
    }
    const Rational tv_j(tv_num, 2 * col_den * pi_den);
    const Rational weight = (mirrored && j != nw - j) ? sys.pi[j] * Rational(2) : sys.pi[j];
    expected += weight * tv_j;
  }
  return expected;
}

double eigen_moment(const SymmetricEigenSystem& sys, int start, long m, int k) {
  require_start(sys, start, "eigen_moment");
  if (k < 0 || k >= sys.states()) throw std::out_of_range("eigen_moment: k out of range");
  const auto rho = DistributionEvaluator(sys, start).at(m);
  std::vector<double> terms(sys.states());
  for (int i = 0; i < sys.states(); ++i) terms[i] = sys.v(i, k) * rho[i];
  const double moment = kahan_sum(terms);
  const double expected = std::pow(sys.lambda[k].to_double(), static_cast<double>(m)) * sys.v(start, k);
  const double scale = std::max({std::abs(moment), std::abs(expected), 1.0});
  if (std::abs(moment - expected) > 1e-9 * scale)
    throw std::logic_error("eigen_moment: moment disagrees with lambda^m v_k(start)");
  return moment;
}

EigenMomentIdentity eigen_moment_exact(const SymmetricEigenSystem& sys, int start, long m, int k) {
  require_start(sys, start, "eigen_moment_exact");
  if (k < 0 || k >= sys.states()) throw std::out_of_range("eigen_moment_exact: k out of range");
  const auto rho = distribution_at(sys, start, m);
  EigenMomentIdentity id;
  id.lhs = Rational(0);
  for (int i = 0; i < sys.states(); ++i) id.lhs += sys.v_hat(i, k) * rho[i];
  id.rhs = Rational::pow(sys.lambda[k], m) * sys.v_hat(start, k);
  id.holds = (id.lhs == id.rhs);
  return id;
}

Rational variance_under_exact(const SymmetricEigenSystem& sys, int k,
                              const std::vector<Rational>& dist) {
  if (static_cast<int>(dist.size()) != sys.states())
    throw std::invalid_argument("variance_under_exact: length mismatch");
  if (k < 0 || k >= sys.states()) throw std::out_of_range("variance_under_exact: k out of range");
  Rational mean(0), second(0);
  for (int i = 0; i < sys.states(); ++i) {
    mean += dist[i] * sys.v_hat(i, k);
    second += dist[i] * sys.v_hat(i, k) * sys.v_hat(i, k);
  }
  return sys.delta_sq[k] * (second - mean * mean);
}

long cutoff_scan(const SymmetricEigenSystem& sys, int start, double epsilon) {
  require_start(sys, start, "cutoff_scan");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("cutoff_scan: epsilon must lie in (0,1)");
  // Periodic chain: lambda_nw = -1 (|lambda| = 1 for some k >= 1).
  if (sys.states() > 1 && sys.lambda.back() == Rational(-1))
    throw NonConvergence("cutoff_scan: periodic chain, TV does not converge");

  DistributionEvaluator eval(sys, start);
  if (eval.tv_to_stationary(0) <= epsilon) return 0;

  long hi = 1;
  while (eval.tv_to_stationary(hi) > epsilon) {
    if (hi > (1L << 40)) throw NonConvergence("cutoff_scan: no crossing found");
    hi *= 2;
  }
  long lo = hi / 2;  // tv(lo) > epsilon
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (eval.tv_to_stationary(mid) <= epsilon)
      hi = mid;
    else
      lo = mid;
  }
  // Local verification instead of assuming monotonicity.
  while (hi > 0 && eval.tv_to_stationary(hi - 1) <= epsilon) --hi;
  return hi;
}

}  // namespace bl
