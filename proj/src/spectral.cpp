#include "bl/spectral.hpp"

#include <cassert>
#include <stdexcept>

namespace bl {

namespace {

void require_canonical(const ModelParams& params, const char* who) {
  if (!is_canonical(params.n1, params.n2, params.nw))
    throw std::invalid_argument(std::string(who) + ": params not canonical");
}

void require_k(const ModelParams& params, int k, const char* who) {
  if (k < 0 || k > params.nw)
    throw std::out_of_range(std::string(who) + ": eigen-index out of range 0..nw");
}

}  // namespace

Rational eigenvalue(const ModelParams& params, int k) {
  require_k(params, k, "eigenvalue");
  const long denom = static_cast<long>(params.n1) * params.n2;
  return Rational(1) - Rational(static_cast<long>(k) * (params.n() - k + 1), denom);
}

std::vector<Rational> spectrum(const ModelParams& params) {
  require_canonical(params, "spectrum");
  std::vector<Rational> values;
  values.reserve(params.states());
  for (int k = 0; k <= params.nw; ++k) values.push_back(eigenvalue(params, k));
  return values;
}

TriangularCoefficients b_coefficients(const ModelParams& params, int k) {
  require_canonical(params, "b_coefficients");
  require_k(params, k, "b_coefficients");
  const int nw = params.nw;
  const int n = params.n();

  TriangularCoefficients out;
  out.k = k;
  out.b.assign(params.states(), Rational(0));
  out.b[k] = Rational(1);  // empty product

  // Running-product recursion.
  for (int i = k + 1; i <= nw; ++i) {
    const long num = static_cast<long>(params.n1 - i + 1) * (nw - i + 1);
    const long den = static_cast<long>(i - k) * (n + 1 - i - k);
    assert(den != 0);  // i+k <= 2 nw <= n for canonical params
    out.b[i] = out.b[i - 1] * Rational(num, den);
  }

  // Pochhammer closed form, checked against the recursion.
  for (int i = k; i <= nw; ++i) {
    const long m = i - k;
    mpz_class num = rising_factorial(k - params.n1, m) * rising_factorial(k - nw, m);
    if (m % 2 != 0) num = -num;
    mpz_class den = factorial_mpz(m) * rising_factorial(2L * k - n, m);
    assert(sgn(den) != 0);
    if (out.b[i] != Rational(num, den))
      throw std::logic_error("b_coefficients: recursion and closed form disagree");
  }
  return out;
}

std::vector<Rational> pascal_to_c(const std::vector<Rational>& b) {
  const int s = static_cast<int>(b.size());
  std::vector<Rational> c(s, Rational(0));
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      Rational term = Rational(binomial_mpz(j, i)) * b[j];
      if ((j - i) % 2 != 0) term = -term;
      c[i] += term;
    }
  return c;
}

std::vector<Rational> pascal_to_c(const TriangularCoefficients& b) { return pascal_to_c(b.b); }

std::vector<Rational> c_to_b(const std::vector<Rational>& c) {
  const int s = static_cast<int>(c.size());
  std::vector<Rational> b(s, Rational(0));
  for (int j = 0; j < s; ++j)
    for (int i = j; i < s; ++i) b[j] += Rational(binomial_mpz(i, j)) * c[i];
  return b;
}

Matrix<Rational> pascal_forward(int size) {
  Matrix<Rational> p(size, size);
  for (int j = 0; j < size; ++j)
    for (int i = j; i < size; ++i) p(j, i) = Rational(binomial_mpz(i, j));
  return p;
}

Matrix<Rational> pascal_inverse(int size) {
  Matrix<Rational> p(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j) {
      Rational v = Rational(binomial_mpz(j, i));
      p(i, j) = ((j - i) % 2 == 0) ? v : -v;
    }
  return p;
}

std::vector<Rational> c_hypergeometric(const ModelParams& params, int k) {
  require_canonical(params, "c_hypergeometric");
  require_k(params, k, "c_hypergeometric");
  const int nw = params.nw;

  // X_m = (k-n1)_m (k-nw)_m / ((n2-nw+1)_m m!), built incrementally with
  // early exit once a numerator factor crosses zero.
  std::vector<Rational> x(nw + 1, Rational(0));
  x[0] = Rational(1);
  for (int m = 1; m <= nw; ++m) {
    const long f1 = static_cast<long>(k) - params.n1 + (m - 1);
    const long f2 = static_cast<long>(k) - nw + (m - 1);
    if (f1 == 0 || f2 == 0) break;  // all later X_m vanish
    const long den = (static_cast<long>(params.n2) - nw + m) * m;
    x[m] = x[m - 1] * Rational(f1 * f2, den);
  }

  std::vector<Rational> c(params.states(), Rational(0));
  for (int i = 0; i <= nw; ++i)
    for (int nn = 0; nn <= k && nn <= i; ++nn) {
      Rational term = Rational(binomial_mpz(k, nn)) * x[i - nn];
      if (nn % 2 != 0) term = -term;
      c[i] += term;
    }
  return c;
}

Matrix<Rational> triangularized_matrix(const ModelParams& params) {
  require_canonical(params, "triangularized_matrix");
  const int s = params.states();
  const long denom = static_cast<long>(params.n1) * params.n2;
  Matrix<Rational> t(s, s);
  for (int i = 0; i < s; ++i) {
    const long drop = static_cast<long>(i) * (params.nw - i) + static_cast<long>(params.nb() + 1) * i;
    t(i, i) = Rational(1) - Rational(drop, denom);
    if (i >= 1)
      t(i, i - 1) = Rational(static_cast<long>(params.n1 - i + 1) * (params.nw - i + 1), denom);
  }
  return t;
}

Matrix<Rational> eigen_basis(const ModelParams& params) {
  require_canonical(params, "eigen_basis");
  const int s = params.states();
  Matrix<Rational> basis(s, s);
  for (int k = 0; k < s; ++k) {
    const auto c = c_hypergeometric(params, k);
    for (int i = 0; i < s; ++i) basis(i, k) = c[i];
  }
  return basis;
}

}  // namespace bl
