#include "g2/dims.hpp"

#include <numeric>
#include <sstream>

#include "g2/fusion.hpp"

namespace g2 {

DimFactors dim_factors(const Weight& mu) {
  auto l = mu.eps();
  long m1 = l[0], m2 = l[1];
  return DimFactors{{m1 - m2 + 1, 2 * m1 + m2 + 5, m1 + 2 * m2 + 4, 3 * m1 + 6, 3 * m2 + 3,
                     3 * (m1 + m2) + 9}};
}

LaurentPoly qdim_formal(const Weight& mu) {
  DimFactors f = dim_factors(mu);
  LaurentPoly num(1), den(1);
  for (long n : f.num) num *= LaurentPoly::qint(n);
  for (long n : DimFactors::den) den *= LaurentPoly::qint(n);
  return exact_divide(num, den);
}

QValue qdim(const Weight& mu, const QContext& ctx) {
  if (ctx.mode == QMode::formal) return QValue::formal(RatFunc(qdim_formal(mu)));
  DimFactors f = dim_factors(mu);
  QValue num = ctx.one(), den = ctx.one();
  for (long n : f.num) num *= ctx.specialize(LaurentPoly::qint(n));
  for (long n : DimFactors::den) den *= ctx.specialize(LaurentPoly::qint(n));
  if (ctx.is_zero(den)) throw DivisionByZero("qdim: denominator vanishes at this q");
  return num / den;
}

long classical_dim(const Weight& mu) {
  DimFactors f = dim_factors(mu);
  long num = 1, den = 1;
  for (long n : f.num) num *= n;
  for (long n : DimFactors::den) den *= n;
  return num / den;
}

std::vector<VanishEntry> vanishing_scan(int ell, int maxdeg) {
  if (ell != 4 && ell != 5 && ell != 9) throw UsageError("vanishing_scan: ell must be 4, 5 or 9");
  QContext ctx = QContext::cyclo(2 * ell, 1);
  std::vector<VanishEntry> out;
  for (int m1 = 0; m1 <= maxdeg; ++m1)
    for (int m2 = 0; m2 <= m1 && m1 + m2 <= maxdeg; ++m2) {
      Weight w = Weight::from_eps(m1, m2);
      QValue v = ctx.specialize(qdim_formal(w));
      out.push_back({w, ctx.is_zero(v)});
    }
  std::sort(out.begin(), out.end(), [](const VanishEntry& a, const VanishEntry& b) { return a.w < b.w; });
  return out;
}

std::string vanishing_scan_json(int ell, int maxdeg) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& e : vanishing_scan(ell, maxdeg)) {
    if (!first) os << ",";
    first = false;
    os << "{\"weight\":" << e.w.str() << ",\"zero\":" << (e.zero ? "true" : "false") << "}";
  }
  os << "]";
  return os.str();
}

bool AdmissibleQ::accepts(const QContext& ctx) const {
  if (generic) {
    // q^2 must not be a root of unity: reject exact roots of unity outright,
    // and float points too close to one of small order
    if (ctx.mode == QMode::cyclo) return false;
    if (ctx.mode == QMode::flt) {
      std::complex<double> q2 = ctx.qf * ctx.qf;
      if (std::abs(std::abs(ctx.qf) - 1.0) > 1e-12) return true;  // not on the unit circle
      for (int n = 1; n <= 64; ++n)
        if (std::abs(std::pow(q2, n) - std::complex<double>(1.0, 0.0)) < 1e-8) return false;
      return true;
    }
    return true;  // formal q
  }
  if (ctx.mode != QMode::cyclo || ctx.m != m) return false;
  for (int ee : exponents)
    if (ee == ctx.e) return true;
  return false;
}

AdmissibleQ admissible_q(const LevelRule& rule) {
  AdmissibleQ a;
  if (rule.generic) {
    a.generic = true;
    return a;
  }
  int ell = rule.k + 12;
  a.m = 2 * ell;
  for (int e = 1; e < a.m; e += 2)
    if (std::gcd(e, ell) == 1) a.exponents.push_back(e);
  return a;
}

QContext level_context(int k, double tol) {
  AdmissibleQ a = admissible_q(LevelRule::Level(k));
  return QContext::cyclo(a.m, a.exponents.front(), tol);
}

std::vector<Weight> first_excluded_row(const LevelRule& rule) {
  if (rule.generic) return {};
  int k = rule.k;
  std::vector<Weight> out;
  if (k % 3 == 0) {
    // all dominant weights with m1+m2 = k/3 + 1
    int d = k / 3 + 1;
    for (int m2 = 0; 2 * m2 <= d; ++m2) out.push_back(Weight::from_eps(d - m2, m2));
  } else if (k % 2 == 1) {
    out.push_back(Weight::from_eps((k + 7) / 2, 0));
  } else {
    out.push_back(Weight::from_eps(k / 2 + 3, 1));
  }
  return out;
}

namespace {

// d_mu via the generator recursion of the dimension proof: peel L2 when
// m2 >= 1, else peel L1, always through products already known
QValue recursion_dim(const Weight& mu, std::map<Weight, QValue>& known, const LevelRule& rule,
                     const QContext& ctx) {
  auto it = known.find(mu);
  if (it != known.end()) return it->second;
  Weight nu;
  FusionVector expand;
  if (mu.b >= 1) {
    nu = Weight{mu.a, mu.b - 1};
    expand = tensor_adjoint(nu, rule);
  } else {
    nu = Weight{mu.a - 1, 0};
    expand = tensor_V(nu, rule);
  }
  if (expand.mult(mu) != 1) throw NotExpressible("dim recursion: cannot isolate " + mu.str());
  QValue gen = (mu.b >= 1) ? qdim(kLambda2, ctx) : qdim(kLambda1, ctx);
  QValue acc = recursion_dim(nu, known, rule, ctx) * gen;
  for (const auto& [g, c] : expand.entries()) {
    if (g == mu) continue;
    acc -= recursion_dim(g, known, rule, ctx) * ctx.integer(c);
  }
  known[mu] = acc;
  return acc;
}

}  // namespace

RecursionReport dim_recursion_check(const LevelRule& rule, int maxdeg, const QContext& ctx) {
  RecursionReport rep;
  std::map<Weight, QValue> known;
  known[kZeroWeight] = ctx.one();
  known[kLambda1] = qdim(kLambda1, ctx);
  known[kLambda2] = qdim(kLambda2, ctx);

  for (int m1 = 0; m1 <= maxdeg && rep.ok; ++m1)
    for (int m2 = 0; m2 <= m1 && m1 + m2 <= maxdeg; ++m2) {
      Weight w = Weight::from_eps(m1, m2);
      if (!in_alcove(w, rule)) continue;
      QValue rec = recursion_dim(w, known, rule, ctx);
      QValue formula = qdim(w, ctx);
      ++rep.checked;
      if (!ctx.equal(rec, formula)) {
        rep.ok = false;
        rep.mismatch = w;
        return rep;
      }
      if (!rule.generic && ctx.is_zero(formula)) {
        // Lemma "nonzero trace": alcove objects have nonzero dimension
        rep.ok = false;
        rep.mismatch = w;
        return rep;
      }
    }

  // boundary: recompute through the untruncated product and require zero
  for (const Weight& bw : first_excluded_row(rule)) {
    Weight nu;
    FusionVector expand;
    LevelRule generic = LevelRule::Generic();
    if (bw.b >= 1) {
      nu = Weight{bw.a, bw.b - 1};
      expand = tensor_adjoint(nu, generic);
    } else {
      nu = Weight{bw.a - 1, 0};
      expand = tensor_V(nu, generic);
    }
    QValue gen = (bw.b >= 1) ? qdim(kLambda2, ctx) : qdim(kLambda1, ctx);
    QValue acc = qdim(nu, ctx) * gen;
    for (const auto& [g, c] : expand.entries()) {
      if (g == bw) continue;
      acc -= qdim(g, ctx) * ctx.integer(c);
    }
    if (!ctx.is_zero(acc) || !ctx.is_zero(qdim(bw, ctx))) {
      rep.ok = false;
      rep.mismatch = bw;
      return rep;
    }
    ++rep.boundary_zeros;
  }
  return rep;
}

}  // namespace g2
