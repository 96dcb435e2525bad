#pragma once

#include <optional>
#include <vector>

#include "g2/qvalue.hpp"
#include "g2/weight.hpp"

namespace g2 {

// The six quantum-integer arguments of the q-dimension product for mu,
// numerator then denominator.
struct DimFactors {
  std::array<long, 6> num;
  static constexpr std::array<long, 6> den = {1, 5, 4, 6, 3, 9};
};
DimFactors dim_factors(const Weight& mu);

// q-dimension as an honest Laurent polynomial (exact division).
LaurentPoly qdim_formal(const Weight& mu);

// q-dimension in the given context. Cyclo mode evaluates numerator and
// denominator separately and raises DivisionByZero when the denominator
// vanishes (only possible at the orders excluded from admissibility).
QValue qdim(const Weight& mu, const QContext& ctx);

// classical dimension: the exact [n] -> n limit
long classical_dim(const Weight& mu);

struct VanishEntry {
  Weight w;
  bool zero;
};
// exact evaluation of the Laurent-polynomial q-dimensions at q = zeta_{2l},
// for all dominant |mu| <= maxdeg; reports the zero set
std::vector<VanishEntry> vanishing_scan(int ell, int maxdeg);
std::string vanishing_scan_json(int ell, int maxdeg);

// q-specification accepted by a rule: for Level k, q = zeta_m^e with
// m = 2(k+12) and q^2 a primitive (k+12)-th root (e odd, gcd(e, k+12) = 1).
struct AdmissibleQ {
  bool generic = false;
  int m = 0;
  std::vector<int> exponents;  // admissible e in [1, m)
  bool accepts(const QContext& ctx) const;
};
AdmissibleQ admissible_q(const LevelRule& rule);
// canonical cyclo context for a level (smallest admissible exponent)
QContext level_context(int k, double tol = 1e-9);

// weights of the first excluded row whose dimension must vanish at level k
std::vector<Weight> first_excluded_row(const LevelRule& rule);

struct RecursionReport {
  bool ok = true;
  std::optional<Weight> mismatch;
  int checked = 0;
  int boundary_zeros = 0;
};
// Recompute every d_mu (|mu| <= maxdeg) from d_{L1}, d_{L2} through the
// fusion recursion and compare with the closed formula; under a Level rule
// additionally assert d = 0 on the first excluded row.
RecursionReport dim_recursion_check(const LevelRule& rule, int maxdeg, const QContext& ctx);

}  // namespace g2
