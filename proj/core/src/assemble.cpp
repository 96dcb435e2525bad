#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>

#include "g2/braid.hpp"
#include "g2/dims.hpp"

namespace g2 {

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Cplx = std::complex<double>;

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Cplx bilinear(const CVec& a, const CVec& b) { return (a.array() * b.array()).sum(); }

int block_mid_index(const Block& b, const Weight& mid) {
  auto it = std::find(b.mids.begin(), b.mids.end(), mid);
  if (it == b.mids.end())
    throw Error("blocks: " + mid.str() + " is not an intermediate of (" + b.lambda.str() + "," +
                b.nu.str() + ")");
  return static_cast<int>(it - b.mids.begin());
}

// damped Gauss-Newton for a holomorphic residual; returns the final residual
double gauss_newton(const std::function<CVec(const CVec&)>& F, CVec& u, int iters, double target) {
  const double h = 1e-7;
  CVec f = F(u);
  if (f.size() == 0) return 0.0;
  double res = f.cwiseAbs().maxCoeff();
  for (int it = 0; it < iters && res > target; ++it) {
    CMat J(f.size(), u.size());
    for (int k = 0; k < u.size(); ++k) {
      CVec up = u;
      up[k] += h;
      J.col(k) = (F(up) - f) / h;
    }
    CVec step = J.completeOrthogonalDecomposition().solve(-f);
    double t = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      CVec u2 = u + t * step;
      CVec f2 = F(u2);
      double r2 = f2.cwiseAbs().maxCoeff();
      if (r2 < res) {
        u = u2;
        f = f2;
        res = r2;
        improved = true;
        break;
      }
      t /= 2;
    }
    if (!improved) break;
  }
  return res;
}

CMat qmatrix_to_dense(const QMatrix& m) {
  CMat out(m.size(), m.size());
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) out(r, c) = m.at(r, c).as_float();
  return out;
}

// Data for the Newton-synthesized blocks: four distinct eigenvalues, or
// fewer when the closed forms degenerate at a root of unity. A is recovered
// entrywise from the merged spectral identity
//   A + p1 p2 A^{-1} = (p1+p2) I + c_d P_dist + c_4 P_4
// combined with (A^{-1})_{rs} = x_r x_s a_{rs} / delta; entries whose
// denominator delta + p1 p2 x_r x_s vanishes stay free unknowns with the
// matching right-hand side forced to zero.
struct SolverData {
  std::vector<Cplx> x;
  Cplx delta;
  std::array<Cplx, 4> lam;
  std::array<int, 4> mult;
  Cplx p1, p2;       // principal eigenvalues of the merged identity
  int dist_ch = 2;   // distinguished multiplicity-one channel (rank-1 a b^T)
  bool has_p4 = false;      // separate Markov-fixed trivial projection
  bool dist_is_p4 = false;  // distinguished channel is the trivial one
  std::vector<Cplx> d4;     // Markov diagonals d_mid/(d_lambda d_V)
  std::vector<std::pair<int, int>> degen;
};

CMat reconstruct_a(const SolverData& sd, const CMat& pd, const CMat& p4, const CVec& free_entries) {
  int n = static_cast<int>(sd.x.size());
  Cplx dist = sd.lam[static_cast<size_t>(sd.dist_ch)];
  Cplx cd = (dist - sd.p1) * (dist - sd.p2) / dist;
  Cplx l4 = sd.lam[3];
  Cplx c4 = sd.has_p4 ? (l4 - sd.p1) * (l4 - sd.p2) / l4 : Cplx(0);
  CMat a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Cplx rhs = ((r == c) ? (sd.p1 + sd.p2) : Cplx(0)) + cd * pd(r, c);
      if (sd.has_p4) rhs += c4 * p4(r, c);
      a(r, c) = sd.delta * rhs /
                (sd.delta + sd.p1 * sd.p2 * sd.x[static_cast<size_t>(r)] * sd.x[static_cast<size_t>(c)]);
    }
  for (size_t k = 0; k < sd.degen.size(); ++k)
    a(sd.degen[k].first, sd.degen[k].second) = free_entries[static_cast<Eigen::Index>(k)];
  return a;
}

CVec degen_rhs(const SolverData& sd, const CMat& pd, const CMat& p4) {
  Cplx dist = sd.lam[static_cast<size_t>(sd.dist_ch)];
  Cplx cd = (dist - sd.p1) * (dist - sd.p2) / dist;
  Cplx l4 = sd.lam[3];
  Cplx c4 = sd.has_p4 ? (l4 - sd.p1) * (l4 - sd.p2) / l4 : Cplx(0);
  CVec out(static_cast<Eigen::Index>(sd.degen.size()));
  for (size_t k = 0; k < sd.degen.size(); ++k) {
    auto [r, c] = sd.degen[k];
    Cplx rhs = ((r == c) ? (sd.p1 + sd.p2) : Cplx(0)) + cd * pd(r, c);
    if (sd.has_p4) rhs += c4 * p4(r, c);
    out[static_cast<Eigen::Index>(k)] = rhs;
  }
  return out;
}

bool verify_solver_block(const SolverData& sd, const CMat& a, const CMat& pd, const CMat& p4,
                         double tol) {
  int n = static_cast<int>(sd.x.size());
  CMat id = CMat::Identity(n, n);
  CMat ann = id;
  for (int ch = 0; ch < 4; ++ch)
    if (sd.mult[static_cast<size_t>(ch)] > 0) ann = ann * (a - sd.lam[static_cast<size_t>(ch)] * id);
  if (max_abs(ann) > tol) return false;
  CMat t = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) t(i, i) = sd.x[static_cast<size_t>(i)];
  if (max_abs(t * a * t * a - sd.delta * id) > tol) return false;
  if (max_abs(a * pd - sd.lam[static_cast<size_t>(sd.dist_ch)] * pd) > tol) return false;
  if (sd.has_p4 && max_abs(a * p4 - sd.lam[3] * p4) > tol) return false;
  for (int ch = 0; ch < 4; ++ch) {
    int mult = sd.mult[static_cast<size_t>(ch)];
    if (mult == 0) continue;
    CMat proj = id;
    for (int other = 0; other < 4; ++other) {
      if (other == ch || sd.mult[static_cast<size_t>(other)] == 0) continue;
      proj = proj * (a - sd.lam[static_cast<size_t>(other)] * id) /
             (sd.lam[static_cast<size_t>(ch)] - sd.lam[static_cast<size_t>(other)]);
    }
    if (std::abs(proj.trace() - Cplx(mult, 0)) > 1e-6) return false;
  }
  return true;
}

}  // namespace

struct BlockStore::Impl {
  LevelRule rule_;
  SolverOptions opts_;
  QContext fctx_;
  std::array<Cplx, 4> lam_;
  int built_ = 0;
  bool allow_reference_ = true;  // guard against recursive fallbacks
  std::map<std::pair<Weight, Weight>, Stored> store_;
  std::map<Weight, Cplx> dim_cache_;

  Impl(const LevelRule& rule, Cplx q, const SolverOptions& opts)
      : rule_(rule), opts_(opts), fctx_(QContext::floating(q, opts.tol)) {
    EigenData e = eigen_data(fctx_);
    lam_ = {e.l1.as_float(), e.l2.as_float(), e.l3.as_float(), e.l4.as_float()};
  }

  Cplx qdim_f(const Weight& w) {
    auto it = dim_cache_.find(w);
    if (it != dim_cache_.end()) return it->second;
    Cplx v = qdim(w, fctx_).as_float();
    dim_cache_[w] = v;
    return v;
  }

  SolverData solver_data(const Block& b) {
    SolverData sd;
    AB2Params p = ab2_params(b.lambda, b.nu, b.mids, fctx_);
    for (const auto& xv : p.x) sd.x.push_back(xv.as_float());
    sd.delta = p.delta.as_float();
    sd.lam = lam_;
    sd.mult = b.eig_mult;

    // distinguished channel: highest-priority multiplicity-one eigenvalue
    static constexpr int kOrder[4] = {2, 3, 1, 0};
    sd.dist_ch = -1;
    for (int c : kOrder)
      if (b.eig_mult[static_cast<size_t>(c)] == 1) {
        sd.dist_ch = c;
        break;
      }
    if (sd.dist_ch < 0)
      throw ConditionsViolated("solver: no multiplicity-one eigenvalue in (" + b.lambda.str() +
                               "," + b.nu.str() + ")");
    std::vector<int> principals;
    for (int c = 0; c < 4; ++c)
      if (c != sd.dist_ch && b.eig_mult[static_cast<size_t>(c)] > 0 &&
          !(c == 3 && sd.dist_ch != 3))
        principals.push_back(c);
    sd.has_p4 = (b.eig_mult[3] > 0 && sd.dist_ch != 3);
    sd.dist_is_p4 = (sd.dist_ch == 3);
    if (principals.size() != 2)
      throw ConditionsViolated("solver: cannot choose principal eigenvalues for (" +
                               b.lambda.str() + "," + b.nu.str() + ")");
    sd.p1 = lam_[static_cast<size_t>(principals[0])];
    sd.p2 = lam_[static_cast<size_t>(principals[1])];

    if (sd.has_p4 || sd.dist_is_p4) {
      Cplx dv = qdim_f(kLambda1), dl = qdim_f(b.lambda);
      for (const Weight& mid : b.mids) sd.d4.push_back(qdim_f(mid) / (dl * dv));
    }
    int k = b.size();
    double scale = std::max(1.0, std::abs(sd.delta));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        if (std::abs(sd.delta + sd.p1 * sd.p2 * sd.x[static_cast<size_t>(r)] *
                                    sd.x[static_cast<size_t>(c)]) < 1e-8 * scale)
          sd.degen.emplace_back(r, c);
    return sd;
  }

  // one pair (lambda, nu) of the tower with its unknowns
  struct PairEntry {
    Block blk;
    SynthMethod method = SynthMethod::diagonal;
    CMat base;               // row-gauge closed form (when not solver-backed)
    std::vector<Cplx> diag;  // distinguished projection diagonal (gauge seed)
    bool solver = false;
    SolverData sd;
    CMat p4;
    CVec d4v;
    int ab_off = -1;  // 2k + #degen unknowns when solver-backed
    int g_off = -1;   // k-1 gauge unknowns (g[0] = 1)
    int pivot = 0;    // index with a[pivot] = 1
  };

  struct Segment {
    std::vector<std::pair<Weight, Weight>> basis;  // (x, y): kappa -> x -> y -> nu
    Weight kappa, nu;
  };

  static CMat apply_gauge(const CMat& a, const CVec& g) {
    CMat out = a;
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) out(r, c) *= g[r] / g[c];
    return out;
  }

  // warm-start data carried between tower depths
  struct WarmData {
    std::vector<Cplx> gauge;         // g[0] = 1 included
    std::vector<Cplx> ab;            // a then b (solver pairs)
    std::vector<Cplx> free_entries;  // degenerate positions
    int pivot = 0;
  };
  std::map<std::pair<Weight, Weight>, WarmData> warm_;

  void ensure(int n) {
    if (built_ >= n) return;
    // deepen one stage at a time; each depth seeds the next
    for (int depth = std::max(2, built_ + 1); depth <= n; ++depth) solve_tower(depth);
    built_ = n;
  }

  // Joint gauge solve for the whole tower up to paths of length n: the
  // closed-form blocks contribute diagonal gauge unknowns, the
  // solver-backed blocks additionally their rank-one projection, and the
  // braid relation on every two-step segment ties them together. Solving
  // globally avoids freezing under-determined gauges at the early stages
  // (the relation against a diagonal S_1 alone pins nothing).
  void solve_tower(int n) {
    BratteliDiagram d = build_diagram(n, rule_);

    std::vector<PairEntry> pairs;
    std::map<std::pair<Weight, Weight>, int> index;
    for (int m = 2; m <= n; ++m)
      for (const Weight& lam : d.levels[static_cast<size_t>(m - 2)])
        for (const Weight& nu : d.levels[static_cast<size_t>(m)]) {
          if (index.count({lam, nu})) continue;
          Block b = make_block(lam, nu, rule_);
          if (b.size() == 0) continue;
          PairEntry pe;
          pe.blk = std::move(b);
          bool closed_form_ok = pe.blk.distinct_eigenvalues() <= 3;
          if (closed_form_ok) {
            try {
              SynthBlock sb = synth_block(pe.blk, fctx_);
              pe.base = qmatrix_to_dense(sb.A);
              pe.method = sb.method;
              if (!sb.projections.empty())
                for (int r = 0; r < pe.blk.size(); ++r)
                  pe.diag.push_back(sb.projections.front().second.at(r, r).as_float());
            } catch (const Error&) {
              closed_form_ok = false;  // degenerate at this q: use the solver
            }
          }
          if (!closed_form_ok) {
            pe.solver = true;
            pe.method = SynthMethod::four_eig_solver;
            pe.sd = solver_data(pe.blk);
            int k = pe.blk.size();
            pe.p4 = CMat::Zero(k, k);
            pe.d4v = CVec::Zero(k);
            if (pe.sd.has_p4 || pe.sd.dist_is_p4) {
              for (int r = 0; r < k; ++r) {
                pe.d4v[r] = pe.sd.d4[static_cast<size_t>(r)];
                for (int c = 0; c < k; ++c) pe.p4(r, c) = pe.sd.d4[static_cast<size_t>(r)];
              }
              pe.diag = pe.sd.d4;
            }
          }
          index[{pe.blk.lambda, pe.blk.nu}] = static_cast<int>(pairs.size());
          pairs.push_back(std::move(pe));
        }

    // unknown layout: (a, b, degenerate entries) per solver pair, then gauges
    int n_unknowns = 0;
    for (auto& pe : pairs)
      if (pe.solver) {
        pe.ab_off = n_unknowns;
        n_unknowns += 2 * pe.blk.size() + static_cast<int>(pe.sd.degen.size());
      }
    for (auto& pe : pairs) {
      pe.g_off = n_unknowns;
      n_unknowns += pe.blk.size() - 1;
    }

    // deduplicated segments (kappa, nu) across all stages
    std::vector<Segment> segs;
    std::set<std::pair<Weight, Weight>> seg_seen;
    for (int m = 3; m <= n; ++m)
      for (const Weight& kappa : d.levels[static_cast<size_t>(m - 3)])
        for (const Weight& nu : d.levels[static_cast<size_t>(m)]) {
          if (seg_seen.count({kappa, nu})) continue;
          Segment s;
          s.kappa = kappa;
          s.nu = nu;
          for (const auto& [x, cx] : tensor_V(kappa, rule_))
            for (const auto& [y, cy] : tensor_V(x, rule_))
              if (tensor_V(y, rule_).mult(nu) > 0) s.basis.emplace_back(x, y);
          if (s.basis.empty()) continue;
          seg_seen.insert({kappa, nu});
          segs.push_back(std::move(s));
        }

    auto solver_matrix = [&](const PairEntry& pe, const CVec& u) -> CMat {
      int k = pe.blk.size();
      CVec av = u.segment(pe.ab_off, k);
      CVec bv = u.segment(pe.ab_off + k, k);
      CVec fe = u.segment(pe.ab_off + 2 * k, static_cast<Eigen::Index>(pe.sd.degen.size()));
      return reconstruct_a(pe.sd, av * bv.transpose(), pe.p4, fe);
    };

    // gauged matrices of all pairs for an unknown vector
    auto expand = [&](const CVec& u) {
      std::vector<CMat> out(pairs.size());
      for (size_t p = 0; p < pairs.size(); ++p) {
        const PairEntry& pe = pairs[p];
        int k = pe.blk.size();
        CMat a = pe.solver ? solver_matrix(pe, u) : pe.base;
        CVec g(k);
        g[0] = 1.0;
        for (int r = 1; r < k; ++r) g[r] = u[pe.g_off + r - 1];
        out[p] = apply_gauge(a, g);
      }
      return out;
    };

    auto entry_of = [&](const std::vector<CMat>& mats, const Weight& lam, const Weight& nu,
                        const Weight& mid_r, const Weight& mid_c) -> Cplx {
      auto it = index.find({lam, nu});
      if (it == index.end())
        throw Error("solve_tower: missing pair (" + lam.str() + "," + nu.str() + ")");
      const PairEntry& pe = pairs[static_cast<size_t>(it->second)];
      return mats[static_cast<size_t>(it->second)](block_mid_index(pe.blk, mid_r),
                                                   block_mid_index(pe.blk, mid_c));
    };

    auto residual = [&](const CVec& u) -> CVec {
      std::vector<CMat> mats = expand(u);
      std::vector<Cplx> parts;
      // spectral structure rows for the solver-backed blocks
      for (const PairEntry& pe : pairs) {
        if (!pe.solver) continue;
        int k = pe.blk.size();
        CVec av = u.segment(pe.ab_off, k);
        CVec bv = u.segment(pe.ab_off + k, k);
        CVec fe = u.segment(pe.ab_off + 2 * k, static_cast<Eigen::Index>(pe.sd.degen.size()));
        CMat pd = av * bv.transpose();
        CMat a = reconstruct_a(pe.sd, pd, pe.p4, fe);
        CMat id = CMat::Identity(k, k);
        Cplx dist = pe.sd.lam[static_cast<size_t>(pe.sd.dist_ch)];
        CVec r1 = a * av - dist * av;
        CVec r2 = a.transpose() * bv - dist * bv;
        for (int i = 0; i < k; ++i) parts.push_back(r1[i]);
        for (int i = 0; i < k; ++i) parts.push_back(r2[i]);
        parts.push_back(bilinear(bv, av) - Cplx(1, 0));
        parts.push_back(av[pe.pivot] - Cplx(1, 0));
        if (pe.sd.has_p4) {
          parts.push_back(av.sum());
          parts.push_back(bilinear(bv, pe.d4v));
        }
        if (pe.sd.dist_is_p4)
          for (int i = 0; i < k; ++i) parts.push_back(av[i] * bv[i] - pe.d4v[i]);
        CVec dr = degen_rhs(pe.sd, pd, pe.p4);
        for (int i = 0; i < dr.size(); ++i) parts.push_back(dr[i]);
        CMat t = CMat::Zero(k, k);
        for (int i = 0; i < k; ++i) t(i, i) = pe.sd.x[static_cast<size_t>(i)];
        CMat tata = t * a * t * a - pe.sd.delta * id;
        CMat ann = id;
        for (int ch = 0; ch < 4; ++ch)
          if (pe.sd.mult[static_cast<size_t>(ch)] > 0)
            ann = ann * (a - pe.sd.lam[static_cast<size_t>(ch)] * id);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            parts.push_back(tata(i, j));
            parts.push_back(ann(i, j));
          }
      }
      // braid relation on every segment
      for (const Segment& s : segs) {
        int dim = static_cast<int>(s.basis.size());
        CMat b = CMat::Zero(dim, dim), c = CMat::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            const auto& [xi, yi] = s.basis[static_cast<size_t>(i)];
            const auto& [xj, yj] = s.basis[static_cast<size_t>(j)];
            if (yi == yj) b(i, j) = entry_of(mats, s.kappa, yi, xi, xj);
            if (xi == xj) c(i, j) = entry_of(mats, xi, s.nu, yi, yj);
          }
        CMat r = b * c * b - c * b * c;
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) parts.push_back(r(i, j));
      }
      CVec out(static_cast<Eigen::Index>(parts.size()));
      for (size_t i = 0; i < parts.size(); ++i) out[static_cast<Eigen::Index>(i)] = parts[i];
      return out;
    };

    auto verify_solver_pairs = [&](const CVec& u) -> bool {
      for (const auto& pe : pairs) {
        if (!pe.solver) continue;
        int k = pe.blk.size();
        CVec av = u.segment(pe.ab_off, k);
        CVec bv = u.segment(pe.ab_off + k, k);
        CVec fe = u.segment(pe.ab_off + 2 * k, static_cast<Eigen::Index>(pe.sd.degen.size()));
        CMat pd = av * bv.transpose();
        CMat a = reconstruct_a(pe.sd, pd, pe.p4, fe);
        if (!verify_solver_block(pe.sd, a, pd, pe.p4, std::max(1e-8, opts_.tol))) return false;
      }
      return true;
    };

    auto commit = [&](const CVec& u) {
      std::vector<CMat> mats = expand(u);
      store_.clear();
      warm_.clear();
      for (size_t p = 0; p < pairs.size(); ++p) {
        const PairEntry& pe = pairs[p];
        int k = pe.blk.size();
        Stored st;
        st.block = pe.blk;
        st.A = mats[p];
        st.method = pe.method;
        AB2Params ab = ab2_params(pe.blk.lambda, pe.blk.nu, pe.blk.mids, fctx_);
        for (const auto& xv : ab.x) st.x.push_back(xv.as_float());
        st.delta = ab.delta.as_float();
        st.gauge.push_back(1.0);
        for (int r = 1; r < k; ++r) st.gauge.push_back(u[pe.g_off + r - 1]);
        WarmData wd;
        wd.gauge.assign(st.gauge.begin(), st.gauge.end());
        if (pe.solver) {
          wd.pivot = pe.pivot;
          for (int i = 0; i < 2 * k; ++i) wd.ab.push_back(u[pe.ab_off + i]);
          for (size_t i = 0; i < pe.sd.degen.size(); ++i)
            wd.free_entries.push_back(u[pe.ab_off + 2 * k + static_cast<int>(i)]);
        }
        warm_[{pe.blk.lambda, pe.blk.nu}] = std::move(wd);
        store_[{pe.blk.lambda, pe.blk.nu}] = std::move(st);
      }
    };

    if (n_unknowns == 0) {
      CVec u(0);
      CVec r0 = residual(u);
      if (r0.size() != 0 && r0.cwiseAbs().maxCoeff() >= opts_.tol)
        throw GaugeSolverFailed("tower of depth " + std::to_string(n) + " inconsistent with no unknowns");
      commit(u);
      return;
    }

    std::mt19937_64 rng(opts_.seed * 7919ULL + static_cast<std::uint64_t>(n));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int rounds = 4;
    double best = 1e300;
    CVec best_u;
    for (int attempt = 0; attempt < rounds * opts_.multistart; ++attempt) {
      CVec u(n_unknowns);
      for (int i = 0; i < u.size(); ++i) u[i] = Cplx(gauss(rng), gauss(rng));
      if (attempt == 8) {
        // after a few direct tries, seed from a continuation ladder solved
        // safely off the unit circle, where all closed forms apply
        if (!reference_init(u, pairs, n)) continue;
      } else {
        bool use_warm = (attempt % 4 != 3);  // every 4th attempt escapes
        for (auto& pe : pairs) {
          auto w = warm_.find({pe.blk.lambda, pe.blk.nu});
          bool warm = use_warm && w != warm_.end();
          if (pe.solver) {
            if (warm && w->second.ab.size() == 2 * static_cast<size_t>(pe.blk.size())) {
              pe.pivot = w->second.pivot;
              for (int i = 0; i < 2 * pe.blk.size(); ++i)
                u[pe.ab_off + i] = w->second.ab[static_cast<size_t>(i)];
              for (size_t i = 0; i < pe.sd.degen.size(); ++i)
                u[pe.ab_off + 2 * pe.blk.size() + static_cast<int>(i)] =
                    i < w->second.free_entries.size() ? w->second.free_entries[i]
                                                      : Cplx(gauss(rng), gauss(rng));
            } else {
              pe.pivot = attempt % pe.blk.size();
            }
          }
          for (int r = 1; r < pe.blk.size(); ++r) {
            if (warm && w->second.gauge.size() == static_cast<size_t>(pe.blk.size())) {
              u[pe.g_off + r - 1] = w->second.gauge[static_cast<size_t>(r)];
            } else if (attempt % 3 != 2) {
              // gauge seeds: the symmetrizing choice g_r = sqrt(d_0/d_r) on
              // attempts 0 mod 3, plain row gauge on attempts 1 mod 3
              Cplx g = 1.0;
              if (attempt % 3 == 0 && static_cast<int>(pe.diag.size()) == pe.blk.size() &&
                  std::abs(pe.diag[static_cast<size_t>(r)]) > 1e-12 && std::abs(pe.diag[0]) > 1e-12)
                g = std::sqrt(pe.diag[0] / pe.diag[static_cast<size_t>(r)]);
              u[pe.g_off + r - 1] = g;
            }
          }
        }
      }
      double res = gauss_newton(residual, u, opts_.newton_iters, 1e-12);
      if (res < best) {
        best = res;
        best_u = u;
      }
      if (std::getenv("G2_DEBUG_SOLVER"))
        fprintf(stderr, "[tower dbg] n=%d attempt=%d unknowns=%d res=%.3e\n", n, attempt,
                n_unknowns, res);
      if (res < opts_.tol && verify_solver_pairs(u)) {
        commit(u);
        return;
      }
    }
    if (std::getenv("G2_DEBUG_SOLVER") && best_u.size() > 0) {
      std::vector<CMat> mats = expand(best_u);
      for (const Segment& s : segs) {
        int dim = static_cast<int>(s.basis.size());
        CMat b = CMat::Zero(dim, dim), c = CMat::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            const auto& [xi, yi] = s.basis[static_cast<size_t>(i)];
            const auto& [xj, yj] = s.basis[static_cast<size_t>(j)];
            if (yi == yj) b(i, j) = entry_of(mats, s.kappa, yi, xi, xj);
            if (xi == xj) c(i, j) = entry_of(mats, xi, s.nu, yi, yj);
          }
        fprintf(stderr, "[tower dbg] segment (%s -> %s) dim=%d resid=%.3e\n",
                s.kappa.str().c_str(), s.nu.str().c_str(), dim, max_abs(b * c * b - c * b * c));
      }
    }
    throw GaugeSolverFailed("global gauge solve failed for tower of depth " + std::to_string(n) +
                            " (best residual " + std::to_string(best) + ")");
  }

  const Stored& get_stored(const Weight& lam, const Weight& nu) const {
    auto it = store_.find({lam, nu});
    if (it == store_.end())
      throw Error("BlockStore: block (" + lam.str() + "," + nu.str() + ") not built");
    return it->second;
  }

  // Seed the unknown vector from a solve of the same tower at q scaled off
  // the unit circle, where every theorem condition holds and the system is
  // well-behaved; the blocks there converge to the target ones.
  template <class PairVec>
  bool reference_init(CVec& u, PairVec& pairs, int depth) {
    if (!allow_reference_) return false;
    const bool dbg = std::getenv("G2_DEBUG_SOLVER") != nullptr;
    try {
      // continuation ladder: walk |q| in from a comfortably generic radius,
      // warm-starting each rung with the previous solution
      auto ref = std::make_unique<Impl>(rule_, fctx_.qf * 1.05, opts_);
      ref->allow_reference_ = false;
      ref->ensure(depth);
      for (double r : {1.02, 1.008, 1.003, 1.001}) {
        auto next = std::make_unique<Impl>(rule_, fctx_.qf * r, opts_);
        next->allow_reference_ = false;
        next->warm_ = ref->warm_;
        next->ensure(depth);
        ref = std::move(next);
      }
      for (auto& pe : pairs) {
        auto it = ref->store_.find({pe.blk.lambda, pe.blk.nu});
        if (it == ref->store_.end()) {
          if (dbg) fprintf(stderr, "[ref dbg] missing pair (%s,%s)\n", pe.blk.lambda.str().c_str(), pe.blk.nu.str().c_str());
          return false;
        }
        const Stored& st = it->second;
        int k = pe.blk.size();
        if (static_cast<int>(st.gauge.size()) != k) return false;
        for (int r = 1; r < k; ++r) u[pe.g_off + r - 1] = st.gauge[static_cast<size_t>(r)];
        if (!pe.solver) continue;
        // strip the gauge to recover the reference block in base convention
        CMat a0 = st.A;
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c)
            a0(r, c) *= st.gauge[static_cast<size_t>(c)] / st.gauge[static_cast<size_t>(r)];
        // rank-one projection of the distinguished eigenvalue at the
        // reference point
        CMat id = CMat::Identity(k, k);
        CMat proj = id;
        Cplx dist = ref->lam_[static_cast<size_t>(pe.sd.dist_ch)];
        for (int other = 0; other < 4; ++other) {
          if (other == pe.sd.dist_ch || pe.blk.eig_mult[static_cast<size_t>(other)] == 0) continue;
          proj = proj * (a0 - ref->lam_[static_cast<size_t>(other)] * id) /
                 (dist - ref->lam_[static_cast<size_t>(other)]);
        }
        int rstar = 0, cstar = 0;
        double mx = -1;
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c)
            if (std::abs(proj(r, c)) > mx) {
              mx = std::abs(proj(r, c));
              rstar = r;
              cstar = c;
            }
        if (mx < 1e-10) return false;
        CVec av = proj.col(cstar);
        CVec bv = proj.row(rstar).transpose() / proj(rstar, cstar);
        int pivot = 0;
        double am = -1;
        for (int r = 0; r < k; ++r)
          if (std::abs(av[r]) > am) {
            am = std::abs(av[r]);
            pivot = r;
          }
        Cplx scale = av[pivot];
        av /= scale;
        bv *= scale;
        pe.pivot = pivot;
        for (int r = 0; r < k; ++r) {
          u[pe.ab_off + r] = av[r];
          u[pe.ab_off + k + r] = bv[r];
        }
        for (size_t i = 0; i < pe.sd.degen.size(); ++i)
          u[pe.ab_off + 2 * k + static_cast<int>(i)] =
              a0(pe.sd.degen[i].first, pe.sd.degen[i].second);
      }
      if (dbg) fprintf(stderr, "[ref dbg] reference init ready for depth %d\n", depth);
      return true;
    } catch (const Error& e) {
      if (dbg) fprintf(stderr, "[ref dbg] reference solve failed: %s\n", e.what());
      return false;
    }
  }
};

BlockStore::BlockStore(const LevelRule& rule, Cplx q, const SolverOptions& opts)
    : impl_(std::make_unique<Impl>(rule, q, opts)) {}
BlockStore::~BlockStore() = default;

void BlockStore::ensure(int n) { impl_->ensure(n); }
const BlockStore::Stored& BlockStore::get(const Weight& lambda, const Weight& nu) const {
  return impl_->get_stored(lambda, nu);
}
const LevelRule& BlockStore::rule() const { return impl_->rule_; }
std::complex<double> BlockStore::q() const { return impl_->fctx_.qf; }
const SolverOptions& BlockStore::options() const { return impl_->opts_; }

Assembly assemble(const Weight& mu, int n, BlockStore& store) {
  if (n < 1) throw UsageError("assemble: n must be >= 1");
  if (n > store.options().max_n)
    throw UsageError("assemble: n exceeds the configured maximum " +
                     std::to_string(store.options().max_n));
  if (!in_alcove(mu, store.rule()))
    throw NotInAlcove("assemble: " + mu.str() + " outside " + store.rule().str());
  store.ensure(n);

  Assembly a;
  a.mu = mu;
  a.n = n;
  a.rule = store.rule();
  a.q = store.q();
  a.tol = store.options().tol;
  a.paths = paths_to(mu, n, store.rule());
  if (a.paths.empty()) throw Error("assemble: no paths to " + mu.str() + " at n = " + std::to_string(n));
  const int dim = static_cast<int>(a.paths.size());

  a.S.assign(static_cast<size_t>(n) - 1, Eigen::MatrixXcd::Zero(dim, dim));
  a.spans.resize(static_cast<size_t>(n) - 1);
  for (int i = 1; i <= n - 1; ++i) {
    // group paths agreeing everywhere except position i
    std::map<PathSeq, std::vector<int>> groups;
    for (int p = 0; p < dim; ++p) {
      PathSeq key = a.paths[static_cast<size_t>(p)];
      key[static_cast<size_t>(i)] = Weight{-1, 0};  // masked position
      groups[key].push_back(p);
    }
    for (const auto& [key, members] : groups) {
      const PathSeq& first = a.paths[static_cast<size_t>(members.front())];
      const Weight lam = first[static_cast<size_t>(i) - 1];
      const Weight nu = first[static_cast<size_t>(i) + 1];
      const BlockStore::Stored& st = store.get(lam, nu);
      for (int pr : members)
        for (int pc : members) {
          int r = block_mid_index(st.block, a.paths[static_cast<size_t>(pr)][static_cast<size_t>(i)]);
          int c = block_mid_index(st.block, a.paths[static_cast<size_t>(pc)][static_cast<size_t>(i)]);
          a.S[static_cast<size_t>(i) - 1](pr, pc) = st.A(r, c);
        }
      a.spans[static_cast<size_t>(i) - 1].push_back({lam, nu, members});
    }
  }
  return a;
}

Eigen::MatrixXcd Assembly::delta_matrix() const {
  const int dim = static_cast<int>(paths.size());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(dim, dim);
  // Delta_n = Delta_{n-1} sigma_{n-1} ... sigma_1, Delta_1 = 1
  for (int k = 2; k <= n; ++k) {
    Eigen::MatrixXcd chain = Eigen::MatrixXcd::Identity(dim, dim);
    for (int j = k - 1; j >= 1; --j) chain = chain * S[static_cast<size_t>(j) - 1];
    d = d * chain;
  }
  return d;
}

Eigen::MatrixXcd Assembly::full_twist() const {
  Eigen::MatrixXcd d = delta_matrix();
  return d * d;
}

std::vector<Eigen::MatrixXcd> tl_elements(const Assembly& a, const QContext& ctx) {
  if (a.mu.degree() != a.n)
    throw UsageError("tl_elements: " + a.mu.str() + " is not new at n = " + std::to_string(a.n));
  EigenData e = eigen_data(ctx);
  Cplx l1 = e.l1.as_float(), l2 = e.l2.as_float();
  Cplx q = ctx.q_complex();
  Cplx two_sq = (q + 1.0 / q) * (q + 1.0 / q);
  const double tol = ctx.tol;

  std::vector<Eigen::MatrixXcd> es;
  const int dim = static_cast<int>(a.paths.size());
  for (const auto& s : a.S) es.push_back((s - l1 * Eigen::MatrixXcd::Identity(dim, dim)) / (l2 - l1));

  for (size_t i = 0; i < es.size(); ++i) {
    if (max_abs(es[i] * es[i] - es[i]) > tol)
      throw TLViolation("tl: e_" + std::to_string(i + 1) + " not idempotent");
    for (size_t j = i + 2; j < es.size(); ++j)
      if (max_abs(es[i] * es[j] - es[j] * es[i]) > tol)
        throw TLViolation("tl: far commutation fails for (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ")");
    if (i + 1 < es.size()) {
      if (max_abs(es[i] * es[i + 1] * es[i] - es[i] / two_sq) > tol)
        throw TLViolation("tl: e e' e != e/[2]^2 at i = " + std::to_string(i + 1));
      if (max_abs(es[i + 1] * es[i] * es[i + 1] - es[i + 1] / two_sq) > tol)
        throw TLViolation("tl: e' e e' != e'/[2]^2 at i = " + std::to_string(i + 1));
    }
  }
  return es;
}

}  // namespace g2
