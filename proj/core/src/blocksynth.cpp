#include <algorithm>

#include "g2/braid.hpp"

namespace g2 {

QMatrix QMatrix::identity(int n, const QContext& ctx) {
  QMatrix m(n, ctx.zero());
  for (int i = 0; i < n; ++i) m.at(i, i) = ctx.one();
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  QMatrix r(n_, a_.empty() ? QValue() : a_[0] - a_[0]);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      QValue acc = at(i, 0) * o.at(0, j);
      for (int k = 1; k < n_; ++k) acc += at(i, k) * o.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  QMatrix r = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) += o.at(i, j);
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  QMatrix r = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) -= o.at(i, j);
  return r;
}

QMatrix QMatrix::scaled(const QValue& c) const {
  QMatrix r = *this;
  for (auto& v : r.a_) v *= c;
  return r;
}

QValue QMatrix::trace() const {
  QValue acc = at(0, 0);
  for (int i = 1; i < n_; ++i) acc += at(i, i);
  return acc;
}

bool QMatrix::is_zero(const QContext& ctx) const {
  for (const auto& v : a_)
    if (!ctx.is_zero(v)) return false;
  return true;
}

std::vector<QValue> two_eig_diagonals(const QValue& a1, const QValue& a2,
                                      const std::vector<QValue>& x, const QContext& ctx) {
  if (x.size() != 2) throw ConditionsViolated("two_eig_diagonals: block size != 2");
  QValue den = (x[0] - x[1]) * (a2 - a1);
  if (ctx.is_zero(den)) throw ConditionsViolated("two_eig_diagonals: coincident twists or eigenvalues");
  return {-(a2 * x[1] + a1 * x[0]) / den, (a2 * x[0] + a1 * x[1]) / den};
}

std::vector<QValue> ab2_closed_form_diagonals(const QValue& l1, const QValue& l2, const QValue& l3,
                                              const AB2Params& p, const QContext& ctx) {
  const size_t n = p.x.size();
  const int eps = (n % 2 == 1) ? 0 : 1;
  QValue l12 = l1 * l2;
  QValue pref_den = (l3 - l1) * (l3 - l2);
  if (ctx.is_zero(pref_den)) throw ConditionsViolated("ab2_closed_form: l3 coincides with a principal eigenvalue");
  QValue pref = l3 / pref_den;
  QValue prodx = ctx.one();
  for (const auto& xv : p.x) prodx *= xv;
  QValue halfpow = (-(p.delta / l12)).pow(static_cast<long>((n - 1 - static_cast<size_t>(eps)) / 2));
  QValue sign = (n % 2 == 1) ? ctx.one() : -ctx.one();  // (-1)^{n-1}

  std::vector<QValue> d;
  d.reserve(n);
  for (size_t r = 0; r < n; ++r) {
    QValue prodr = ctx.one();
    for (size_t s = 0; s < n; ++s) {
      if (s == r) continue;
      QValue num = p.delta + l12 * p.x[r] * p.x[s];
      QValue den = p.delta * (p.x[r] - p.x[s]);
      if (ctx.is_zero(den)) throw ConditionsViolated("ab2_closed_form: coincident twists");
      prodr *= num / den;
    }
    QValue term1 = sign * l3 * ((l12 * p.x[r] + p.delta / p.x[r]) / p.delta) * prodx;
    QValue term2 = (l1 + l2) * halfpow * (eps == 1 ? p.x[r] : ctx.one());
    d.push_back(pref * prodr * (term1 - term2));
  }
  return d;
}

namespace {

// row-gauge rank-one idempotent with prescribed diagonal (valid when the
// diagonal sums to one)
QMatrix row_gauge_projection(const std::vector<QValue>& diag, const QContext& ctx) {
  int n = static_cast<int>(diag.size());
  QMatrix p(n, ctx.zero());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) p.at(r, c) = diag[static_cast<size_t>(r)];
  return p;
}

// channels sorted by preference for the distinguished eigenvalue: l3, l4, l2, l1
constexpr int kDistinguishedOrder[4] = {2, 3, 1, 0};

void verify_block(const SynthBlock& sb, const EigenData& e, const QContext& ctx) {
  const Block& b = sb.block;
  int n = b.size();
  // annihilating polynomial over the distinct eigenvalues
  QMatrix ann = QMatrix::identity(n, ctx);
  for (int ch = 0; ch < 4; ++ch) {
    if (b.eig_mult[static_cast<size_t>(ch)] == 0) continue;
    QMatrix shift = sb.A - QMatrix::identity(n, ctx).scaled(e.lambda(ch));
    ann = ann * shift;
  }
  if (!ann.is_zero(ctx))
    throw ConditionsViolated("synth_block: annihilator fails for (" + b.lambda.str() + "," + b.nu.str() + ")");
  // spectral projections have trace = predicted multiplicity
  for (int ch = 0; ch < 4; ++ch) {
    int mult = b.eig_mult[static_cast<size_t>(ch)];
    if (mult == 0) continue;
    QMatrix proj = QMatrix::identity(n, ctx);
    for (int other = 0; other < 4; ++other) {
      if (other == ch || b.eig_mult[static_cast<size_t>(other)] == 0) continue;
      QValue den = e.lambda(ch) - e.lambda(other);
      proj = (sb.A - QMatrix::identity(n, ctx).scaled(e.lambda(other))) * proj;
      proj = proj.scaled(den.inverse());
    }
    QValue tr = proj.trace() - ctx.integer(mult);
    if (!ctx.is_zero(tr))
      throw ConditionsViolated("synth_block: eigenvalue multiplicity mismatch for channel " +
                               std::to_string(ch) + " in (" + b.lambda.str() + "," + b.nu.str() + ")");
  }
  // T A T A = delta I with T = diag(x)
  QMatrix t(n, ctx.zero());
  for (int i = 0; i < n; ++i) t.at(i, i) = sb.params.x[static_cast<size_t>(i)];
  QMatrix tata = t * sb.A * t * sb.A;
  if (!(tata - QMatrix::identity(n, ctx).scaled(sb.params.delta)).is_zero(ctx))
    throw ConditionsViolated("synth_block: TATA != delta for (" + b.lambda.str() + "," + b.nu.str() + ")");
}

}  // namespace

SynthBlock synth_block(const Block& b, const QContext& ctx) {
  SynthBlock sb;
  sb.block = b;
  sb.params = ab2_params(b.lambda, b.nu, b.mids, ctx);
  EigenData e = eigen_data(ctx);
  const int n = b.size();
  const int distinct = b.distinct_eigenvalues();

  if (n == 1) {
    int ch = 0;
    for (int c = 0; c < 4; ++c)
      if (b.eig_mult[static_cast<size_t>(c)] == 1) ch = c;
    QValue lam = e.lambda(ch);
    // Drinfeld consistency lambda^2 x^2 = delta
    if (!ctx.equal(lam * lam * sb.params.x[0] * sb.params.x[0], sb.params.delta))
      throw ConditionsViolated("synth_block: 1x1 Drinfeld consistency fails at (" + b.lambda.str() +
                               "," + b.nu.str() + ")");
    sb.A = QMatrix(1, lam);
    sb.method = SynthMethod::diagonal;
    verify_block(sb, e, ctx);
    return sb;
  }

  if (distinct == 2) {
    if (n != 2)
      throw ConditionsViolated("synth_block: two-eigenvalue block of size " + std::to_string(n));
    int ch1 = -1, ch2 = -1;  // ch2 = distinguished (later channel)
    for (int c = 0; c < 4; ++c)
      if (b.eig_mult[static_cast<size_t>(c)] > 0) (ch1 < 0 ? ch1 : ch2) = c;
    QValue a1 = e.lambda(ch1), a2 = e.lambda(ch2);
    auto d = two_eig_diagonals(a1, a2, sb.params.x, ctx);
    QMatrix p = row_gauge_projection(d, ctx);
    sb.A = QMatrix::identity(2, ctx).scaled(a1) + p.scaled(a2 - a1);
    sb.method = SynthMethod::two_eig;
    sb.projections.emplace_back(ch2, p);
    verify_block(sb, e, ctx);
    return sb;
  }

  if (distinct == 3) {
    int dch = -1;
    for (int c : kDistinguishedOrder)
      if (b.eig_mult[static_cast<size_t>(c)] == 1) {
        dch = c;
        break;
      }
    if (dch < 0)
      throw ConditionsViolated("synth_block: no multiplicity-one eigenvalue to distinguish in (" +
                               b.lambda.str() + "," + b.nu.str() + ")");
    std::vector<int> principals;
    for (int c = 0; c < 4; ++c)
      if (c != dch && b.eig_mult[static_cast<size_t>(c)] > 0) principals.push_back(c);
    QValue p1 = e.lambda(principals[0]), p2 = e.lambda(principals[1]);
    QValue l3 = e.lambda(dch);
    // the closed form is only valid under the full hypothesis set; outside
    // (which happens at roots of unity, for non-recent blocks and for the
    // exceptional recent cases) the braid-pinned solver must take over
    for (size_t r = 0; r < sb.params.x.size(); ++r) {
      if (ctx.equal(sb.params.delta, p1 * p1 * sb.params.x[r] * sb.params.x[r]) ||
          ctx.equal(sb.params.delta, p2 * p2 * sb.params.x[r] * sb.params.x[r]))
        throw ConditionsViolated("synth_block: delta = l^2 x^2 at (" + b.lambda.str() + "," +
                                 b.nu.str() + ")");
      for (size_t s = 0; s < sb.params.x.size(); ++s)
        if (ctx.is_zero(sb.params.delta + p1 * p2 * sb.params.x[r] * sb.params.x[s]))
          throw ConditionsViolated("synth_block: delta + l1 l2 x_r x_s = 0 at (" + b.lambda.str() +
                                   "," + b.nu.str() + ")");
    }
    auto d = ab2_closed_form_diagonals(p1, p2, l3, sb.params, ctx);
    QMatrix p = row_gauge_projection(d, ctx);
    // entrywise inversion of the linear relation between A and A^{-1}
    QValue c3 = (l3 - p1) * (l3 - p2) / l3;
    QMatrix rhs = QMatrix::identity(n, ctx).scaled(p1 + p2) + p.scaled(c3);
    sb.A = QMatrix(n, ctx.zero());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        QValue den = sb.params.delta + p1 * p2 * sb.params.x[static_cast<size_t>(r)] * sb.params.x[static_cast<size_t>(c)];
        if (ctx.is_zero(den))
          throw ConditionsViolated("synth_block: delta + l1 l2 x_r x_s = 0 at (" + b.lambda.str() +
                                   "," + b.nu.str() + ")");
        sb.A.at(r, c) = sb.params.delta * rhs.at(r, c) / den;
      }
    sb.method = SynthMethod::ab2_closed_form;
    sb.projections.emplace_back(dch, p);
    verify_block(sb, e, ctx);
    return sb;
  }

  throw SolverFailed("synth_block: four distinct eigenvalues at (" + b.lambda.str() + "," +
                     b.nu.str() + ") need the float Newton solver");
}

}  // namespace g2
