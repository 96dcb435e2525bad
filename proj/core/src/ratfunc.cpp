#include "g2/ratfunc.hpp"

namespace g2 {

RatFunc::RatFunc(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
  if (d.is_zero()) throw DivisionByZero("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  // strip q-units off the denominator
  int sd = den_.min_exp();
  if (sd != 0) {
    den_ = exact_divide(den_, LaurentPoly::monomial(sd));
    num_ = num_ * LaurentPoly::monomial(-sd);
  }
  LaurentPoly g = laurent_gcd(num_, den_);
  if (!g.is_one()) {
    // gcd is an ordinary monic poly; divide the unit-free parts
    int sn = num_.min_exp();
    LaurentPoly unitless = exact_divide(num_, LaurentPoly::monomial(sn));
    num_ = LaurentPoly::monomial(sn) * exact_divide(unitless, g);
    den_ = exact_divide(den_, g);
  }
  Rational low = den_.coeff(den_.min_exp());
  if (low != 1) {
    LaurentPoly inv = LaurentPoly::monomial(0, Rational(1) / low);
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("RatFunc: division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("RatFunc: inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  RatFunc r(1), base = *this;
  unsigned long e = static_cast<unsigned long>(k);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace g2
