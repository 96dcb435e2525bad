#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "g2/errors.hpp"
#include "g2/rational.hpp"

namespace g2 {

// Laurent polynomial in q with exact rational coefficients.
// Canonical form: no zero coefficients stored; the empty map is 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) { set(0, Rational(static_cast<long>(c))); }  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rational& c) { set(0, c); }                    // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(int exp, const Rational& c = 1);
  // quantum integer [n] = (q^n - q^-n)/(q - q^-1); [-n] = -[n], [0] = 0
  static LaurentPoly qint(long n);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coeff(int exp) const;
  void set(int exp, const Rational& c);
  int min_exp() const;  // requires nonzero
  int max_exp() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  LaurentPoly pow(unsigned long k) const;
  // q -> q^-1
  LaurentPoly bar() const;

  std::complex<double> eval(const std::complex<double>& q) const;
  // value at q = 1 (finite for any Laurent polynomial)
  Rational eval_at_one() const;

  std::string str() const;            // human readable, descending exponents
  std::string json() const;           // {"terms": [[exp, "num/den"], ...]}
  static LaurentPoly from_json(const std::string& text);

 private:
  std::map<int, Rational> terms_;
};

// Exact quotient in the Laurent ring; throws NotDivisible on remainder.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);

// Monic gcd of the underlying ordinary polynomials (units q^k quotiented out).
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace g2
