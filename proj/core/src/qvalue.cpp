#include "g2/qvalue.hpp"

#include <cmath>

namespace g2 {

QMode QValue::mode() const {
  if (std::holds_alternative<RatFunc>(v_)) return QMode::formal;
  if (std::holds_alternative<CycNumber>(v_)) return QMode::cyclo;
  return QMode::flt;
}

const RatFunc& QValue::as_formal() const {
  if (auto* p = std::get_if<RatFunc>(&v_)) return *p;
  throw TagMismatch("QValue: not a formal value");
}

const CycNumber& QValue::as_cyclo() const {
  if (auto* p = std::get_if<CycNumber>(&v_)) return *p;
  throw TagMismatch("QValue: not a cyclotomic value");
}

std::complex<double> QValue::as_float() const {
  if (auto* p = std::get_if<std::complex<double>>(&v_)) return *p;
  throw TagMismatch("QValue: not a float value");
}

std::complex<double> QValue::to_complex() const {
  switch (mode()) {
    case QMode::cyclo:
      return as_cyclo().to_complex();
    case QMode::flt:
      return as_float();
    default:
      throw TagMismatch("QValue: formal value has no numeric image");
  }
}

QValue QValue::operator-() const {
  switch (mode()) {
    case QMode::formal:
      return formal(-as_formal());
    case QMode::cyclo:
      return cyclo(-as_cyclo());
    default:
      return flt(-as_float());
  }
}

namespace {
void check_same(const QValue& a, const QValue& b) {
  if (a.mode() != b.mode()) throw TagMismatch("QValue: mixed tags in arithmetic");
}
}  // namespace

QValue operator+(const QValue& a, const QValue& b) {
  check_same(a, b);
  switch (a.mode()) {
    case QMode::formal:
      return QValue::formal(a.as_formal() + b.as_formal());
    case QMode::cyclo:
      return QValue::cyclo(a.as_cyclo() + b.as_cyclo());
    default:
      return QValue::flt(a.as_float() + b.as_float());
  }
}

QValue operator-(const QValue& a, const QValue& b) { return a + (-b); }

QValue operator*(const QValue& a, const QValue& b) {
  check_same(a, b);
  switch (a.mode()) {
    case QMode::formal:
      return QValue::formal(a.as_formal() * b.as_formal());
    case QMode::cyclo:
      return QValue::cyclo(a.as_cyclo() * b.as_cyclo());
    default:
      return QValue::flt(a.as_float() * b.as_float());
  }
}

QValue operator/(const QValue& a, const QValue& b) {
  check_same(a, b);
  switch (a.mode()) {
    case QMode::formal:
      return QValue::formal(a.as_formal() / b.as_formal());
    case QMode::cyclo:
      return QValue::cyclo(a.as_cyclo() / b.as_cyclo());
    default: {
      auto d = b.as_float();
      if (d == std::complex<double>(0.0, 0.0)) throw DivisionByZero("QValue: float division by zero");
      return QValue::flt(a.as_float() / d);
    }
  }
}

QValue QValue::inverse() const {
  switch (mode()) {
    case QMode::formal:
      return formal(as_formal().inverse());
    case QMode::cyclo:
      return cyclo(as_cyclo().inverse());
    default: {
      auto z = as_float();
      if (z == std::complex<double>(0.0, 0.0)) throw DivisionByZero("QValue: inverse of zero");
      return flt(1.0 / z);
    }
  }
}

QValue QValue::pow(long k) const {
  switch (mode()) {
    case QMode::formal:
      return formal(as_formal().pow(k));
    case QMode::cyclo:
      return cyclo(as_cyclo().pow(k));
    default:
      return flt(std::pow(as_float(), static_cast<double>(k)));
  }
}

bool QValue::operator==(const QValue& o) const {
  if (mode() != o.mode()) return false;
  switch (mode()) {
    case QMode::formal:
      return as_formal() == o.as_formal();
    case QMode::cyclo:
      return as_cyclo() == o.as_cyclo();
    default:
      return as_float() == o.as_float();
  }
}

std::string QValue::str() const {
  switch (mode()) {
    case QMode::formal:
      return as_formal().str();
    case QMode::cyclo:
      return as_cyclo().str();
    default: {
      auto z = as_float();
      return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
             std::to_string(z.imag()) + "i)";
    }
  }
}

QContext QContext::formal() { return QContext{QMode::formal, 0, 0, {0, 0}, 1e-9}; }

QContext QContext::cyclo(int m, int e, double tol) {
  if (m < 1) throw InadmissibleQ("cyclo context: m must be positive");
  QContext c;
  c.mode = QMode::cyclo;
  c.m = m;
  c.e = ((e % m) + m) % m;
  c.tol = tol;
  return c;
}

QContext QContext::floating(std::complex<double> q, double tol) {
  if (q == std::complex<double>(0.0, 0.0)) throw InadmissibleQ("float context: q = 0");
  QContext c;
  c.mode = QMode::flt;
  c.qf = q;
  c.tol = tol;
  return c;
}

QValue QContext::zero() const { return integer(0); }
QValue QContext::one() const { return integer(1); }

QValue QContext::integer(long n) const { return rational(Rational(n)); }

QValue QContext::rational(const Rational& r) const {
  switch (mode) {
    case QMode::formal:
      return QValue::formal(RatFunc(LaurentPoly::monomial(0, r)));
    case QMode::cyclo:
      return QValue::cyclo(CycNumber::from_rational(m, r));
    default:
      return QValue::flt({r.get_d(), 0.0});
  }
}

QValue QContext::q_power(long k) const {
  switch (mode) {
    case QMode::formal:
      return QValue::formal(RatFunc(LaurentPoly::monomial(static_cast<int>(k))));
    case QMode::cyclo:
      return QValue::cyclo(CycNumber::zeta_pow(m, static_cast<long>(e) * k));
    default:
      return QValue::flt(std::pow(qf, static_cast<double>(k)));
  }
}

QValue QContext::theta() const {
  switch (mode) {
    case QMode::formal:
      throw TagMismatch("theta: not a rational function of q");
    case QMode::cyclo:
      if (m % 3 != 0) throw InadmissibleQ("theta: field lacks a cube root of unity (3 does not divide m)");
      return QValue::cyclo(CycNumber::zeta_pow(m, m / 3));
    default:
      return QValue::flt(std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0));
  }
}

std::complex<double> QContext::q_complex() const {
  switch (mode) {
    case QMode::cyclo:
      return CycNumber::zeta_pow(m, e).to_complex();
    case QMode::flt:
      return qf;
    default:
      throw TagMismatch("q_complex: formal context");
  }
}

QValue QContext::specialize(const LaurentPoly& p) const {
  switch (mode) {
    case QMode::formal:
      return QValue::formal(RatFunc(p));
    case QMode::cyclo: {
      CycNumber acc = CycNumber::zero(m);
      for (const auto& [exp, c] : p.terms())
        acc = acc + CycNumber::from_rational(m, c) * CycNumber::zeta_pow(m, static_cast<long>(e) * exp);
      return QValue::cyclo(acc);
    }
    default:
      return QValue::flt(p.eval(qf));
  }
}

QValue QContext::specialize(const RatFunc& f) const {
  if (mode == QMode::formal) return QValue::formal(f);
  QValue den = specialize(f.den());
  if (is_zero(den)) throw DivisionByZero("specialize: denominator vanishes at q");
  return specialize(f.num()) / den;
}

bool QContext::is_zero(const QValue& v) const {
  switch (v.mode()) {
    case QMode::formal:
      return v.as_formal().is_zero();
    case QMode::cyclo:
      return v.as_cyclo().is_zero();
    default:
      return std::abs(v.as_float()) < tol;
  }
}

bool QContext::equal(const QValue& a, const QValue& b) const { return is_zero(a - b); }

}  // namespace g2
