#pragma once

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "g2/errors.hpp"
#include "g2/rational.hpp"

namespace g2 {

// Euler totient and the m-th cyclotomic polynomial (monic, ascending coeffs).
int euler_phi(int m);
std::vector<Rational> cyclotomic_polynomial(int m);

// Element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1} of a fixed
// primitive m-th root z, reduced modulo Phi_m. All arithmetic is exact.
class CycNumber {
 public:
  CycNumber() : m_(1), c_(1, Rational(0)) {}
  CycNumber(int m, std::vector<Rational> coords);

  static CycNumber zero(int m);
  static CycNumber one(int m);
  static CycNumber from_rational(int m, const Rational& r);
  static CycNumber zeta_pow(int m, long e);  // z^e, e arbitrary (mod m)

  int order() const { return m_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational(Rational* out = nullptr) const;

  CycNumber operator-() const;
  friend CycNumber operator+(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator-(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator/(const CycNumber& a, const CycNumber& b);
  bool operator==(const CycNumber& o) const;

  CycNumber inverse() const;
  CycNumber pow(long k) const;

  // image in Q(zeta_L) under zeta_m -> zeta_L^{L/m}; requires m | L
  CycNumber embed(int L) const;

  std::complex<double> to_complex() const;
  std::string str() const;
  std::string json() const;  // {"m": m, "coords": ["..",..]}

 private:
  int m_;
  std::vector<Rational> c_;  // length phi(m)
};

}  // namespace g2
