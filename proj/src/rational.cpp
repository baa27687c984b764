#include "bl/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace bl {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
  v_.canonicalize();
}

Rational Rational::from_string(std::string_view s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      mpz_class n(std::string(s), 10);
      return Rational(n);
    }
    mpz_class num(std::string(s.substr(0, slash)), 10);
    mpz_class den(std::string(s.substr(slash + 1)), 10);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(const Rational& base, long exp) {
  if (exp < 0) throw std::domain_error("Rational::pow: negative exponent");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exp));
  return Rational(num, den);  // canonical since base was
}

Rational Rational::binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return Rational(0);
  return Rational(binomial_mpz(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

mpz_class rising_factorial(long a, long m) {
  mpz_class acc(1);
  for (long j = 0; j < m; ++j) {
    const long f = a + j;
    if (f == 0) return mpz_class(0);
    acc *= f;
  }
  return acc;
}

mpz_class binomial_mpz(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial_mpz(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace bl
