#pragma once

#include <complex>
#include <string>
#include <variant>

#include "g2/cyclotomic.hpp"
#include "g2/ratfunc.hpp"

namespace g2 {

enum class QMode { formal, cyclo, flt };

// Element of the coefficient tower: a rational function of a formal q, an
// exact cyclotomic number with q specialized to zeta_m^e, or a complex double.
// Arithmetic never crosses tags; mixing raises TagMismatch.
class QValue {
 public:
  QValue() : v_(RatFunc(0)) {}
  static QValue formal(RatFunc f) { return QValue(std::move(f)); }
  static QValue cyclo(CycNumber c) { return QValue(std::move(c)); }
  static QValue flt(std::complex<double> z) { return QValue(z); }

  QMode mode() const;
  const RatFunc& as_formal() const;
  const CycNumber& as_cyclo() const;
  std::complex<double> as_float() const;
  // best-effort numeric image (formal values evaluated at |q|=1.1? no:
  // formal has no distinguished point, so this throws for formal)
  std::complex<double> to_complex() const;

  QValue operator-() const;
  friend QValue operator+(const QValue& a, const QValue& b);
  friend QValue operator-(const QValue& a, const QValue& b);
  friend QValue operator*(const QValue& a, const QValue& b);
  friend QValue operator/(const QValue& a, const QValue& b);
  QValue& operator+=(const QValue& o) { return *this = *this + o; }
  QValue& operator-=(const QValue& o) { return *this = *this - o; }
  QValue& operator*=(const QValue& o) { return *this = *this * o; }
  QValue& operator/=(const QValue& o) { return *this = *this / o; }

  QValue inverse() const;
  QValue pow(long k) const;

  // exact structural equality (float: bitwise); prefer QContext::equal
  bool operator==(const QValue& o) const;

  std::string str() const;

 private:
  explicit QValue(RatFunc f) : v_(std::move(f)) {}
  explicit QValue(CycNumber c) : v_(std::move(c)) {}
  explicit QValue(std::complex<double> z) : v_(z) {}
  std::variant<RatFunc, CycNumber, std::complex<double>> v_;
};

// Evaluation context fixing the tag, the point q, and the float tolerance.
struct QContext {
  QMode mode = QMode::formal;
  int m = 0;   // cyclo: q = zeta_m^e
  int e = 0;
  std::complex<double> qf{0.0, 0.0};  // float mode point
  double tol = 1e-9;

  static QContext formal();
  static QContext cyclo(int m, int e, double tol = 1e-9);
  static QContext floating(std::complex<double> q, double tol = 1e-9);

  QValue zero() const;
  QValue one() const;
  QValue integer(long n) const;
  QValue rational(const Rational& r) const;
  QValue q_power(long k) const;  // q^k
  QValue theta() const;          // primitive cube root (cyclo requires 3 | m)
  // numeric value of q (formal mode: throws)
  std::complex<double> q_complex() const;

  // ring-homomorphic evaluation at the context's q
  QValue specialize(const LaurentPoly& p) const;
  QValue specialize(const RatFunc& f) const;  // DivisionByZero if denominator dies

  bool is_zero(const QValue& v) const;
  bool equal(const QValue& a, const QValue& b) const;
};

}  // namespace g2
