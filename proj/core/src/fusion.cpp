#include "g2/fusion.hpp"

#include <mutex>
#include <sstream>

namespace g2 {

int FusionVector::mult(const Weight& w) const {
  auto it = m_.find(w);
  return it == m_.end() ? 0 : it->second;
}

void FusionVector::add(const Weight& w, int c) {
  if (c == 0) return;
  auto it = m_.find(w);
  if (it == m_.end()) {
    m_[w] = c;
  } else {
    it->second += c;
    if (it->second == 0) m_.erase(it);
  }
}

bool FusionVector::nonnegative() const {
  for (const auto& [w, c] : m_)
    if (c < 0) return false;
  return true;
}

long FusionVector::size() const {
  long s = 0;
  for (const auto& [w, c] : m_) s += c;
  return s;
}

FusionVector& FusionVector::operator+=(const FusionVector& o) {
  for (const auto& [w, c] : o.m_) add(w, c);
  return *this;
}

FusionVector& FusionVector::operator-=(const FusionVector& o) {
  for (const auto& [w, c] : o.m_) add(w, -c);
  return *this;
}

FusionVector FusionVector::operator*(int c) const {
  FusionVector r;
  if (c == 0) return r;
  for (const auto& [w, k] : m_) r.m_[w] = k * c;
  return r;
}

std::string FusionVector::str() const {
  if (m_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : m_) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << w.str();
  }
  return os.str();
}

std::string FusionVector::json() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [w, c] : m_) {
    if (!first) os << ",";
    first = false;
    os << "\"" << w.str() << "\":" << c;
  }
  os << "}";
  return os.str();
}

namespace {

// signed Racah-Speiser sum of lambda + omega over a weight multiset,
// reduced by the (affine) Weyl dot action
FusionVector racah_speiser(const Weight& lambda, const std::vector<std::array<int, 3>>& weights,
                           const LevelRule& rule) {
  if (!in_alcove(lambda, rule))
    throw NotInAlcove("tensor product: " + lambda.str() + " outside " + rule.str());
  auto rho = RootDatum::rho();
  auto l = lambda.eps();
  FusionVector out;
  for (const auto& om : weights) {
    std::array<int, 3> v = {l[0] + om[0] + rho[0], l[1] + om[1] + rho[1], l[2] + om[2] + rho[2]};
    Reduction red = reduce_shifted(v, rule);
    if (red.dead) continue;
    Weight w = Weight::from_eps(red.v[0] - rho[0], red.v[1] - rho[1]);
    out.add(w, red.sign);
  }
  if (!out.nonnegative())
    throw Error("racah_speiser: negative multiplicity after cancellation for " + lambda.str());
  return out;
}

enum class Gen { v, adjoint };

struct CacheKey {
  bool generic;
  int k;
  Weight w;
  Gen g;
  auto operator<=>(const CacheKey&) const = default;
};

std::mutex g_cache_mu;
std::map<CacheKey, FusionVector> g_cache;

FusionVector cached_product(const Weight& lambda, Gen g, const LevelRule& rule) {
  CacheKey key{rule.generic, rule.generic ? 0 : rule.k, lambda, g};
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  FusionVector r = racah_speiser(
      lambda, g == Gen::v ? RootDatum::weights_of_v() : RootDatum::weights_of_adjoint(), rule);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.emplace(key, r);
  return r;
}

FusionVector mul_by_simple(const FusionVector& x, const Weight& mu, const LevelRule& rule);

FusionVector mul_vector(const FusionVector& x, const FusionVector& y, const LevelRule& rule) {
  FusionVector out;
  for (const auto& [w, c] : y.entries()) out += mul_by_simple(x, w, rule) * c;
  return out;
}

// x (x) V_mu by reducing mu through the generators; recursion is on the
// rank (|mu|, a), which strictly decreases
FusionVector mul_by_simple(const FusionVector& x, const Weight& mu, const LevelRule& rule) {
  if (mu == kZeroWeight) return x;
  if (mu == kLambda1 || mu == kLambda2) {
    Gen g = (mu == kLambda1) ? Gen::v : Gen::adjoint;
    FusionVector out;
    for (const auto& [w, c] : x.entries()) out += cached_product(w, g, rule) * c;
    return out;
  }
  Weight nu;
  Gen gen;
  if (mu.b >= 1) {
    nu = Weight{mu.a, mu.b - 1};  // mu - L2
    gen = Gen::adjoint;
  } else {
    nu = Weight{mu.a - 1, 0};  // mu - L1
    gen = Gen::v;
  }
  FusionVector expand = cached_product(nu, gen, rule);
  if (expand.mult(mu) != 1)
    throw NotExpressible("grothendieck_mul: cannot isolate " + mu.str() + " in a generator product");
  FusionVector out = mul_by_simple(mul_by_simple(x, nu, rule),
                                   gen == Gen::adjoint ? kLambda2 : kLambda1, rule);
  expand.add(mu, -1);
  out -= mul_vector(x, expand, rule);
  return out;
}

}  // namespace

FusionVector tensor_V(const Weight& lambda, const LevelRule& rule) {
  return cached_product(lambda, Gen::v, rule);
}

FusionVector tensor_adjoint(const Weight& lambda, const LevelRule& rule) {
  return cached_product(lambda, Gen::adjoint, rule);
}

FusionVector grothendieck_mul(const FusionVector& x, const FusionVector& y, const LevelRule& rule) {
  for (const auto& [w, c] : x.entries())
    if (!in_alcove(w, rule)) throw NotInAlcove("grothendieck_mul: " + w.str() + " outside " + rule.str());
  for (const auto& [w, c] : y.entries())
    if (!in_alcove(w, rule)) throw NotInAlcove("grothendieck_mul: " + w.str() + " outside " + rule.str());
  return mul_vector(x, y, rule);
}

FusionVector mul_simple(const Weight& lambda, const Weight& mu, const LevelRule& rule) {
  return grothendieck_mul(FusionVector(lambda), FusionVector(mu), rule);
}

int fusion_mult(const Weight& nu, const Weight& lambda, const Weight& gamma, const LevelRule& rule) {
  if (gamma == kZeroWeight) return nu == lambda ? 1 : 0;
  if (gamma == kLambda1) return tensor_V(lambda, rule).mult(nu);
  if (gamma == kLambda2) return tensor_adjoint(lambda, rule).mult(nu);
  return mul_simple(lambda, gamma, rule).mult(nu);
}

void FusionCache::clear() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.clear();
}

size_t FusionCache::size() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  return g_cache.size();
}

std::string FusionCache::dump_json() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  std::ostringstream os;
  os << "{\"version\":1,\"entries\":[";
  bool first = true;
  for (const auto& [k, v] : g_cache) {
    if (!first) os << ",";
    first = false;
    os << "{\"rule\":\"" << (k.generic ? "generic" : std::to_string(k.k)) << "\",\"weight\":\""
       << k.w.str() << "\",\"gen\":\"" << (k.g == Gen::v ? "V" : "adjoint") << "\",\"result\":"
       << v.json() << "}";
  }
  os << "]}";
  return os.str();
}

void FusionCache::load_json(const std::string& text) {
  // results are recomputable; a malformed or stale cache is simply ignored
  if (text.find("\"version\":1") == std::string::npos) return;
  size_t pos = 0;
  while ((pos = text.find("{\"rule\":\"", pos)) != std::string::npos) {
    size_t rule_start = pos + 9;
    size_t rule_end = text.find('"', rule_start);
    size_t w_start = text.find("\"weight\":\"", rule_end) + 10;
    size_t w_end = text.find('"', w_start);
    size_t g_start = text.find("\"gen\":\"", w_end) + 7;
    size_t g_end = text.find('"', g_start);
    size_t r_start = text.find("\"result\":", g_end) + 9;
    size_t r_end = text.find('}', r_start);
    std::string rule_s = text.substr(rule_start, rule_end - rule_start);
    std::string gen_s = text.substr(g_start, g_end - g_start);
    try {
      LevelRule rule = (rule_s == "generic") ? LevelRule::Generic() : LevelRule::Level(std::stoi(rule_s));
      Weight w = Weight::parse(text.substr(w_start, w_end - w_start));
      Gen g = (gen_s == "V") ? Gen::v : Gen::adjoint;
      FusionVector fv;
      std::string body = text.substr(r_start, r_end - r_start + 1);
      size_t p = 1;
      while ((p = body.find('"', p)) != std::string::npos && p < body.size()) {
        size_t q = body.find('"', p + 1);
        if (q == std::string::npos) break;
        std::string key = body.substr(p + 1, q - p - 1);
        size_t colon = body.find(':', q);
        size_t end = body.find_first_of(",}", colon);
        fv.add(Weight::parse(key), std::stoi(body.substr(colon + 1, end - colon - 1)));
        p = end;
      }
      CacheKey key{rule.generic, rule.generic ? 0 : rule.k, w, g};
      std::lock_guard<std::mutex> lock(g_cache_mu);
      g_cache.emplace(key, fv);
    } catch (const std::exception&) {
      // skip unparseable entries
    }
    pos = r_end;
  }
}

}  // namespace g2
