#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "g2/bratteli.hpp"
#include "g2/qmatrix.hpp"

namespace g2 {

// Braiding eigenvalues on the channels (2L1, L2, L1, 0) of V^(x)2, and the
// twist of V: (q^2, -1, -q^-6, q^-12), Theta_V = q^12.
struct EigenData {
  QValue l1, l2, l3, l4, theta_v;
  const QValue& lambda(int channel) const;
};
// Validates the ribbon constraint chain and rejects symmetric points (q^2 = 1).
EigenData eigen_data(const QContext& ctx);

// Theta_mu = q^{C_mu}
QValue twist(const Weight& mu, const QContext& ctx);

// Jucys-Murphy data of a block: full twist delta = q^{C_nu - C_lambda - 2 C_V}
// and twist eigenvalues x_r = q^{C_mid - C_lambda - C_V} per intermediate.
struct AB2Params {
  QValue delta;
  std::vector<QValue> x;
  bool conditions_ok = true;
  std::vector<std::string> violations;  // named failed predicates
};
AB2Params ab2_params(const Weight& lambda, const Weight& nu, const std::vector<Weight>& mids,
                     const QContext& ctx);

enum class SynthMethod { diagonal, two_eig, ab2_closed_form, four_eig_solver };
std::string method_name(SynthMethod m);

// A synthesized braid-generator block in row gauge, with the distinguished
// eigenprojections that the closed forms construct (tagged by channel).
struct SynthBlock {
  Block block;
  AB2Params params;
  QMatrix A;
  SynthMethod method = SynthMethod::diagonal;
  std::vector<std::pair<int, QMatrix>> projections;
};

struct SolverOptions {
  double tol = 1e-9;
  int newton_iters = 200;
  int multistart = 16;
  std::uint64_t seed = 0;
  int max_n = 5;
};

// Closed-form synthesis (sizes 1 and 2, and >= 3 with three distinct
// eigenvalues of which the distinguished one has multiplicity one).
// Works in any context mode; four-eigenvalue blocks require float mode and
// are produced by the Newton solver in BlockStore.
SynthBlock synth_block(const Block& b, const QContext& ctx);

// Eigenprojection diagonals from the two-eigenvalue closed form; row r
// carries x[r]. proj_idx selects which eigenvalue the projection targets.
std::vector<QValue> two_eig_diagonals(const QValue& a1, const QValue& a2,
                                      const std::vector<QValue>& x, const QContext& ctx);
// Diagonals of the rank-one projection for l3 in the cubic closed form.
std::vector<QValue> ab2_closed_form_diagonals(const QValue& l1, const QValue& l2, const QValue& l3,
                                              const AB2Params& p, const QContext& ctx);

// Gauge-consistent float blocks for a whole tower, solved stage by stage so
// that the assembled generators satisfy the braid relations.
class BlockStore {
 public:
  BlockStore(const LevelRule& rule, std::complex<double> q, const SolverOptions& opts = {});
  ~BlockStore();
  BlockStore(const BlockStore&) = delete;
  BlockStore& operator=(const BlockStore&) = delete;

  struct Stored {
    Block block;
    Eigen::MatrixXcd A;
    SynthMethod method;
    std::vector<std::complex<double>> x;
    std::complex<double> delta;
    std::vector<std::complex<double>> gauge;  // applied to the row-gauge block
  };

  void ensure(int n);  // build all stages up to paths of length n
  const Stored& get(const Weight& lambda, const Weight& nu) const;
  const LevelRule& rule() const;
  std::complex<double> q() const;
  const SolverOptions& options() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Assembled braid generator matrices on Hom(V_mu, V^(x)n) in the path basis.
struct Assembly {
  Weight mu;
  int n = 0;
  LevelRule rule;
  std::complex<double> q;
  double tol = 1e-9;
  std::vector<PathSeq> paths;
  std::vector<Eigen::MatrixXcd> S;  // S[i-1] represents sigma_i
  // per generator: the block partition (path indices per block occurrence)
  struct Span {
    Weight lambda, nu;
    std::vector<int> path_idx;
  };
  std::vector<std::vector<Span>> spans;

  Eigen::MatrixXcd delta_matrix() const;       // Delta_n = Delta_{n-1} s_{n-1} ... s_1
  Eigen::MatrixXcd full_twist() const;         // Delta_n^2
};

Assembly assemble(const Weight& mu, int n, BlockStore& store);

// Temperley-Lieb idempotents e_i on the new part (|mu| = n): the spectral
// projections of S_i onto l2. Verifies the TL relations and throws
// TLViolation with the offending relation otherwise.
std::vector<Eigen::MatrixXcd> tl_elements(const Assembly& a, const QContext& ctx);

}  // namespace g2
