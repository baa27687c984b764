#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace bl {

/// Exact rational scalar backing the exact backend.
///
/// Arithmetic is closed-form and never rounds. Conversion exact -> float is
/// total (to_double); the reverse direction is deliberately not provided, so
/// a Rational can only originate from integers or other Rationals.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n) : v_(n) {}
  Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);

  Rational(double) = delete;  // float -> exact is forbidden

  /// Parses "num/den" or a plain integer string.
  static Rational from_string(std::string_view s);

  static Rational pow(const Rational& base, long exp);  // exp >= 0
  static Rational binomial(long n, long k);             // 0 for k < 0 or k > n

  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  /// "num/den", or just "num" when den == 1.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

/// Rising factorial a(a+1)...(a+m-1) over the integers; (a)_0 = 1.
/// Stops early once a factor hits zero (nonpositive integer arguments).
mpz_class rising_factorial(long a, long m);

mpz_class binomial_mpz(unsigned long n, unsigned long k);
mpz_class factorial_mpz(unsigned long n);

}  // namespace bl
