#include "g2/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace g2 {

int euler_phi(int m) {
  int result = m, n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

void divmod(std::vector<Rational> a, const std::vector<Rational>& b,
            std::vector<Rational>& q, std::vector<Rational>& r) {
  q.assign(a.size(), Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    trim(a);
  }
  r = a;
  trim(q);
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// per-order field data
struct FieldData {
  int m = 1;
  int deg = 1;
  std::vector<Rational> phi;
};

const FieldData& field(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;

  auto fd = std::make_unique<FieldData>();
  fd->m = m;
  fd->phi = cyclotomic_polynomial(m);
  fd->deg = static_cast<int>(fd->phi.size()) - 1;
  const FieldData& ref = *fd;
  cache[m] = std::move(fd);
  return ref;
}

std::vector<Rational> reduce_mod_phi(std::vector<Rational> p, const FieldData& fd) {
  int d = fd.deg;
  // synthetic division by the monic Phi_m, top down
  for (size_t k = p.size(); k-- > static_cast<size_t>(d);) {
    if (p[k] == 0) continue;
    Rational f = p[k];
    p[k] = 0;
    for (int i = 0; i < d; ++i) p[k - static_cast<size_t>(d) + static_cast<size_t>(i)] -= f * fd.phi[static_cast<size_t>(i)];
  }
  p.resize(static_cast<size_t>(d), Rational(0));
  std::vector<Rational> out(static_cast<size_t>(d), Rational(0));
  for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
  return out;
}

}  // namespace

std::vector<Rational> cyclotomic_polynomial(int m) {
  if (m < 1) throw Error("cyclotomic_polynomial: m must be positive");
  if (m == 1) return {Rational(-1), Rational(1)};  // x - 1
  // (x^m - 1) / prod_{d|m, d<m} Phi_d
  std::vector<Rational> num(static_cast<size_t>(m) + 1, Rational(0));
  num[0] = -1;
  num[static_cast<size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<Rational> q, r;
    divmod(num, cyclotomic_polynomial(d), q, r);
    num = q;
  }
  return num;
}

CycNumber::CycNumber(int m, std::vector<Rational> coords) : m_(m), c_(std::move(coords)) {
  const FieldData& fd = field(m);
  if (static_cast<int>(c_.size()) != fd.deg)
    throw Error("CycNumber: coords length must be phi(m)");
  for (auto& x : c_) x.canonicalize();
}

CycNumber CycNumber::zero(int m) {
  return CycNumber(m, std::vector<Rational>(static_cast<size_t>(field(m).deg), Rational(0)));
}

CycNumber CycNumber::one(int m) { return from_rational(m, Rational(1)); }

CycNumber CycNumber::from_rational(int m, const Rational& r) {
  std::vector<Rational> c(static_cast<size_t>(field(m).deg), Rational(0));
  c[0] = r;
  return CycNumber(m, std::move(c));
}

CycNumber CycNumber::zeta_pow(int m, long e) {
  const FieldData& fd = field(m);
  long k = ((e % m) + m) % m;
  std::vector<Rational> p(static_cast<size_t>(k) + 1, Rational(0));
  p[static_cast<size_t>(k)] = 1;
  return CycNumber(m, reduce_mod_phi(std::move(p), fd));
}

bool CycNumber::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycNumber::is_rational(Rational* out) const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  if (out) *out = c_[0];
  return true;
}

CycNumber CycNumber::operator-() const {
  CycNumber r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycNumber operator+(const CycNumber& a, const CycNumber& b) {
  if (a.m_ != b.m_) throw TagMismatch("CycNumber: mixed orders");
  CycNumber r = a;
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
  if (a.m_ != b.m_) throw TagMismatch("CycNumber: mixed orders");
  const FieldData& fd = field(a.m_);
  return CycNumber(a.m_, reduce_mod_phi(poly_mul(a.c_, b.c_), fd));
}

CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

bool CycNumber::operator==(const CycNumber& o) const { return m_ == o.m_ && c_ == o.c_; }

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw DivisionByZero("CycNumber: inverse of zero");
  const FieldData& fd = field(m_);
  // extended euclid: s*f + t*Phi = gcd = const, so f^{ -1 } = s / gcd
  std::vector<Rational> r0 = fd.phi, r1 = c_;
  trim(r1);
  std::vector<Rational> s0 = {}, s1 = {Rational(1)};
  while (!r1.empty()) {
    std::vector<Rational> q, rem;
    divmod(r0, r1, q, rem);
    std::vector<Rational> s2 = s0;  // s2 = s0 - q*s1
    std::vector<Rational> qs = poly_mul(q, s1);
    if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  // r0 is a nonzero constant (Phi_m irreducible over Q)
  if (r0.size() != 1) throw Error("CycNumber: inverse failed (non-constant gcd)");
  Rational g = r0[0];
  for (auto& x : s0) x /= g;
  return CycNumber(m_, reduce_mod_phi(std::move(s0), fd));
}

CycNumber CycNumber::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CycNumber r = one(m_), base = *this;
  unsigned long e = static_cast<unsigned long>(k);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

CycNumber CycNumber::embed(int L) const {
  if (L == m_) return *this;
  if (L % m_ != 0) throw Error("CycNumber::embed: target order not a multiple");
  long step = L / m_;
  CycNumber acc = zero(L);
  CycNumber z = zeta_pow(L, step);
  // Horner over the power-basis coords
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * z + from_rational(L, c_[i]);
  }
  return acc;
}

std::complex<double> CycNumber::to_complex() const {
  std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(m_));
  std::complex<double> acc{0.0, 0.0};
  for (size_t i = c_.size(); i-- > 0;) acc = acc * z + std::complex<double>(c_[i].get_d(), 0.0);
  return acc;
}

std::string CycNumber::str() const {
  std::ostringstream os;
  os << "cyc(" << m_ << ";";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : " ") << rational_str(c_[i]);
  os << ")";
  return os.str();
}

std::string CycNumber::json() const {
  std::ostringstream os;
  os << "{\"m\":" << m_ << ",\"coords\":[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << "\"" << rational_str(c_[i]) << "\"";
  os << "]}";
  return os.str();
}

}  // namespace g2
