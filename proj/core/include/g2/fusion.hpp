#pragma once

#include <map>
#include <string>
#include <vector>

#include "g2/weight.hpp"

namespace g2 {

// Integer-multiplicity formal sum of dominant weights. Signed entries are
// allowed (virtual Grothendieck elements); zero multiplicities never stored.
class FusionVector {
 public:
  FusionVector() = default;
  explicit FusionVector(const Weight& w) { add(w, 1); }

  const std::map<Weight, int>& entries() const { return m_; }
  // iterable directly, so range-for over a temporary product is safe
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }
  int mult(const Weight& w) const;
  void add(const Weight& w, int c);
  bool is_zero() const { return m_.empty(); }
  bool nonnegative() const;
  long size() const;  // sum of multiplicities

  FusionVector& operator+=(const FusionVector& o);
  FusionVector& operator-=(const FusionVector& o);
  FusionVector operator*(int c) const;
  friend FusionVector operator+(FusionVector a, const FusionVector& b) { return a += b; }
  friend FusionVector operator-(FusionVector a, const FusionVector& b) { return a -= b; }
  bool operator==(const FusionVector& o) const { return m_ == o.m_; }

  std::string str() const;
  std::string json() const;  // {"[m1,m2]": mult, ...}

 private:
  std::map<Weight, int> m_;
};

// V_lambda (x) V by the hexagon rule (signed Racah-Speiser over the weights
// of V), truncated by the Kac-Walton adjustments under a Level rule.
FusionVector tensor_V(const Weight& lambda, const LevelRule& rule);

// V_lambda (x) V_{L2} over the adjoint weight multiset.
FusionVector tensor_adjoint(const Weight& lambda, const LevelRule& rule);

// Ring product, computed by expanding the second factor through the
// generators V and V_{L2}; throws NotExpressible when the recursion cannot
// reduce a summand with multiplicity one.
FusionVector grothendieck_mul(const FusionVector& x, const FusionVector& y, const LevelRule& rule);
FusionVector mul_simple(const Weight& lambda, const Weight& mu, const LevelRule& rule);

// N^nu_{lambda, gamma}: multiplicity of V_nu in V_lambda (x) V_gamma.
int fusion_mult(const Weight& nu, const Weight& lambda, const Weight& gamma, const LevelRule& rule);

// Process-wide memo for generator products, keyed (rule, lambda, generator).
// Thread-safe; optionally persisted as JSON.
struct FusionCache {
  static void clear();
  static std::string dump_json();             // deterministic
  static void load_json(const std::string&);  // ignores stale version stamps
  static size_t size();
};

}  // namespace g2
