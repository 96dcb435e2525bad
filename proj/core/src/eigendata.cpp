#include "g2/braid.hpp"

namespace g2 {

const QValue& EigenData::lambda(int channel) const {
  switch (channel) {
    case 0: return l1;
    case 1: return l2;
    case 2: return l3;
    default: return l4;
  }
}

EigenData eigen_data(const QContext& ctx) {
  // symmetric points are excluded: q^2 = 1 collapses the braiding
  QValue q2 = ctx.q_power(2);
  if (ctx.equal(q2, ctx.one())) throw InadmissibleQ("eigen_data: q^2 = 1 (symmetric braiding)");
  if (ctx.mode == QMode::flt && std::abs(ctx.qf) < ctx.tol)
    throw InadmissibleQ("eigen_data: q = 0");

  EigenData e{
      ctx.q_power(2),                      // l1
      -ctx.one(),                          // l2
      -ctx.q_power(-6),                    // l3
      ctx.q_power(-12),                    // l4
      ctx.q_power(12),                     // Theta_V
  };

  // ribbon constraint chain
  if (!ctx.equal(e.l4 * e.l4, e.l3.pow(4))) throw InadmissibleQ("eigen_data: l4^2 != l3^4");
  if (!ctx.equal(e.theta_v, e.l3.pow(-2))) throw InadmissibleQ("eigen_data: Theta_V != l3^-2");
  if (!ctx.equal(e.l2 * e.l2, ctx.one())) throw InadmissibleQ("eigen_data: l2^2 != 1");
  if (!ctx.equal(e.l3, -(e.l1.pow(-3)))) throw InadmissibleQ("eigen_data: l3 != -l1^-3");
  return e;
}

QValue twist(const Weight& mu, const QContext& ctx) { return ctx.q_power(mu.casimir()); }

AB2Params ab2_params(const Weight& lambda, const Weight& nu, const std::vector<Weight>& mids,
                     const QContext& ctx) {
  constexpr int c_v = 12;  // C_{Lambda_1}
  AB2Params p;
  int cl = lambda.casimir();
  p.delta = ctx.q_power(nu.casimir() - cl - 2 * c_v);
  for (const Weight& m : mids) p.x.push_back(ctx.q_power(m.casimir() - cl - c_v));

  EigenData e = eigen_data(ctx);
  auto flag = [&p](const std::string& name) {
    p.conditions_ok = false;
    p.violations.push_back(name);
  };
  for (size_t r = 0; r < p.x.size(); ++r)
    for (size_t s = r + 1; s < p.x.size(); ++s)
      if (ctx.equal(p.x[r], p.x[s]))
        flag("x_distinct(" + mids[r].str() + "," + mids[s].str() + ")");
  // delta not in {l_k^2 x_r^2} for the principal eigenvalues l1, l2
  for (size_t r = 0; r < p.x.size(); ++r) {
    if (ctx.equal(p.delta, e.l1 * e.l1 * p.x[r] * p.x[r])) flag("delta=l1^2x^2(" + mids[r].str() + ")");
    if (ctx.equal(p.delta, e.l2 * e.l2 * p.x[r] * p.x[r])) flag("delta=l2^2x^2(" + mids[r].str() + ")");
  }
  // delta + l1 l2 x_r x_s != 0  (l1 l2 = -q^2, the Lemma `recent1` predicate)
  for (size_t r = 0; r < p.x.size(); ++r)
    for (size_t s = 0; s < p.x.size(); ++s)
      if (ctx.is_zero(p.delta + e.l1 * e.l2 * p.x[r] * p.x[s]))
        flag("delta+l1l2xx=0(" + mids[r].str() + "," + mids[s].str() + ")");
  return p;
}

std::string method_name(SynthMethod m) {
  switch (m) {
    case SynthMethod::diagonal: return "diagonal";
    case SynthMethod::two_eig: return "two_eig";
    case SynthMethod::ab2_closed_form: return "ab2_closed_form";
    default: return "four_eig_solver";
  }
}

}  // namespace g2
