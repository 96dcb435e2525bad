#include "g2/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace g2 {

std::string rational_str(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_str(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

LaurentPoly LaurentPoly::monomial(int exp, const Rational& c) {
  LaurentPoly p;
  p.set(exp, c);
  return p;
}

LaurentPoly LaurentPoly::qint(long n) {
  if (n < 0) return -qint(-n);
  LaurentPoly p;
  // [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
  for (long j = 0; j < n; ++j) p.set(static_cast<int>(n - 1 - 2 * j), 1);
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

Rational LaurentPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set(int exp, const Rational& c) {
  if (c == 0) {
    terms_.erase(exp);
  } else {
    Rational cc = c;
    cc.canonicalize();
    terms_[exp] = cc;
  }
}

int LaurentPoly::min_exp() const { return terms_.begin()->first; }
int LaurentPoly::max_exp() const { return terms_.rbegin()->first; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      auto it = r.terms_.find(ea + eb);
      if (it == r.terms_.end()) {
        r.terms_[ea + eb] = ca * cb;
      } else {
        it->second += ca * cb;
      }
    }
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::pow(unsigned long k) const {
  LaurentPoly r(1), base = *this;
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[-e] = c;
  return r;
}

std::complex<double> LaurentPoly::eval(const std::complex<double>& q) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [e, c] : terms_) acc += c.get_d() * std::pow(q, e);
  return acc;
}

Rational LaurentPoly::eval_at_one() const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) acc += c;
  return acc;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    if (!first) os << (c < 0 ? " - " : " + ");
    if (first && c < 0) os << "-";
    first = false;
    Rational ac = abs(c);
    int e = it->first;
    if (e == 0) {
      os << rational_str(ac);
    } else {
      if (ac != 1) os << rational_str(ac) << "*";
      os << "q^" << e;
    }
  }
  return os.str();
}

std::string LaurentPoly::json() const {
  std::ostringstream os;
  os << "{\"terms\":[";
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ",";
    first = false;
    os << "[" << e << ",\"" << rational_str(c) << "\"]";
  }
  os << "]}";
  return os.str();
}

LaurentPoly LaurentPoly::from_json(const std::string& text) {
  // minimal parser for the fixed {"terms": [[e, "c"], ...]} schema
  LaurentPoly p;
  size_t pos = text.find('[');
  if (pos == std::string::npos) throw UnknownFormat("LaurentPoly::from_json: no terms array");
  ++pos;
  while (true) {
    pos = text.find('[', pos);
    if (pos == std::string::npos) break;
    size_t comma = text.find(',', pos);
    size_t q1 = text.find('"', comma);
    size_t q2 = text.find('"', q1 + 1);
    int e = std::stoi(text.substr(pos + 1, comma - pos - 1));
    p.set(e, rational_from_str(text.substr(q1 + 1, q2 - q1 - 1)));
    pos = q2 + 1;
  }
  return p;
}

namespace {

// dense ordinary-polynomial view, coefficients ascending
std::vector<Rational> dense(const LaurentPoly& p, int shift) {
  std::vector<Rational> v(static_cast<size_t>(p.max_exp() - shift) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) v[static_cast<size_t>(e - shift)] = c;
  return v;
}

LaurentPoly from_dense(const std::vector<Rational>& v, int shift) {
  LaurentPoly p;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) p.set(static_cast<int>(i) + shift, v[i]);
  return p;
}

void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// euclidean division a = q*b + r over Q[x]
void divmod(std::vector<Rational> a, const std::vector<Rational>& b,
            std::vector<Rational>& q, std::vector<Rational>& r) {
  q.assign(a.size(), Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    trim(a);
    if (a.empty()) break;
    if (a.size() >= b.size() && a.back() == 0) trim(a);
  }
  r = a;
  trim(q);
}

}  // namespace

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw DivisionByZero("exact_divide: zero divisor");
  if (a.is_zero()) return LaurentPoly();
  int sa = a.min_exp(), sb = b.min_exp();
  std::vector<Rational> q, r;
  divmod(dense(a, sa), dense(b, sb), q, r);
  if (!r.empty()) throw NotDivisible("exact_divide: nonzero remainder");
  return from_dense(q, sa - sb);
}

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<Rational> x = dense(a, a.min_exp());
  std::vector<Rational> y = dense(b, b.min_exp());
  while (!y.empty()) {
    std::vector<Rational> q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  // monic normalization
  Rational lead = x.back();
  for (auto& c : x) c /= lead;
  return from_dense(x, 0);
}

}  // namespace g2
