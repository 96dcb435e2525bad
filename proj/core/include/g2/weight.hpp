#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "g2/errors.hpp"

namespace g2 {

// Dominant integral G2 weight, stored in fundamental coordinates
// lambda = a*L1 + b*L2. Epsilon coordinates (the paper's Young-diagram
// labels [m1, m2]) are derived: (m1, m2, m3) = (a+b, b, -a-2b).
struct Weight {
  int a = 0;
  int b = 0;

  constexpr std::array<int, 3> eps() const { return {a + b, b, -a - 2 * b}; }
  // filtration degree |lambda| = m1 + m2; V_lambda first appears in V^{|lambda|}
  constexpr int degree() const { return a + 2 * b; }
  // quantum Casimir C_lambda = (lambda + 2 rho, lambda)
  int casimir() const;

  static Weight from_eps(int m1, int m2);  // throws if not dominant
  static std::optional<Weight> try_from_eps(int m1, int m2);

  // order by (|lambda|, a, b): the path/report order used everywhere
  friend constexpr auto operator<=>(const Weight& x, const Weight& y) {
    if (auto c = (x.a + 2 * x.b) <=> (y.a + 2 * y.b); c != 0) return c;
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
  friend constexpr bool operator==(const Weight&, const Weight&) = default;

  std::string str() const;  // "[m1,m2]" in epsilon coordinates
  static Weight parse(const std::string& s);  // "m1,m2" or "[m1,m2]"
};

inline constexpr Weight kZeroWeight{0, 0};
inline constexpr Weight kLambda1{1, 0};
inline constexpr Weight kLambda2{0, 1};

// Root data in epsilon coordinates, inner product (e_i, e_j) = delta_ij.
struct RootDatum {
  static const std::array<std::array<int, 3>, 6>& short_roots();
  static const std::array<std::array<int, 3>, 6>& long_roots();
  static constexpr std::array<int, 3> rho() { return {2, 1, -3}; }
  // weights of V: short roots and 0 (all multiplicity one)
  static const std::vector<std::array<int, 3>>& weights_of_v();
  // weights of the adjoint V_{L2}: all roots and 0 with multiplicity two
  static const std::vector<std::array<int, 3>>& weights_of_adjoint();
};

int dot(const std::array<int, 3>& x, const std::array<int, 3>& y);

// Generic ring or the level-k quotient (k >= -2). The alcove P_{+,k} is
// m1+m2 <= k/3 when 3|k and 2*m1+m2 <= k+6 otherwise.
struct LevelRule {
  bool generic = true;
  int k = 0;

  static LevelRule Generic() { return LevelRule{true, 0}; }
  static LevelRule Level(int k);

  friend bool operator==(const LevelRule&, const LevelRule&) = default;
  std::string str() const;
};

bool in_alcove(const Weight& w, const LevelRule& rule);
// all of P_{+,k}, sorted by (|lambda|, a); Level rules only
std::vector<Weight> alcove_weights(const LevelRule& rule);

// Outcome of reducing a rho-shifted vector v by the affine Weyl group W_k
// (classical part only for Generic rules).
struct Reduction {
  bool dead = false;  // v lies on a reflection hyperplane
  int sign = 1;       // det of the reducing element
  std::array<int, 3> v{};  // dominant representative, strictly inside the wall
};
Reduction reduce_shifted(std::array<int, 3> v, const LevelRule& rule);

// Single application of the affine dot action s0.lambda = s0(lambda+rho)-rho.
struct AffineReflection {
  std::array<int, 3> eps{};              // reflected triple (may be non-dominant)
  std::optional<Weight> dominant;        // set when the triple is dominant
  int sign = -1;
  bool fixed = false;                    // lambda+rho on a hyperplane of W_k
};
AffineReflection affine_reflect(const Weight& w, const LevelRule& rule);

}  // namespace g2
