#pragma once

#include "g2/laurent.hpp"

namespace g2 {

// Rational function in q, stored as a reduced pair of Laurent polynomials.
// The denominator is an ordinary polynomial (min exponent 0) whose
// lowest-degree coefficient is 1; all q-units live in the numerator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}               // NOLINT(google-explicit-constructor)
  RatFunc(const LaurentPoly& p) : num_(p), den_(1) {} // NOLINT(google-explicit-constructor)
  RatFunc(const LaurentPoly& n, const LaurentPoly& d);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  // true iff the denominator is the unit 1 (value lies in the Laurent ring)
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  RatFunc inverse() const;
  RatFunc pow(long k) const;
  RatFunc bar() const { return RatFunc(num_.bar(), den_.bar()); }

  std::string str() const;

 private:
  void normalize();
  LaurentPoly num_, den_;
};

}  // namespace g2
