#include "g2/weight.hpp"

#include <algorithm>
#include <sstream>

namespace g2 {

int Weight::casimir() const {
  // (lambda + 2 rho, lambda) in epsilon coordinates
  auto l = eps();
  auto r = RootDatum::rho();
  int c = 0;
  for (int i = 0; i < 3; ++i) c += (l[i] + 2 * r[i]) * l[i];
  return c;
}

Weight Weight::from_eps(int m1, int m2) {
  auto w = try_from_eps(m1, m2);
  if (!w) throw Error("Weight::from_eps: not dominant: [" + std::to_string(m1) + "," + std::to_string(m2) + "]");
  return *w;
}

std::optional<Weight> Weight::try_from_eps(int m1, int m2) {
  if (m1 < m2 || m2 < 0) return std::nullopt;
  return Weight{m1 - m2, m2};
}

std::string Weight::str() const {
  auto l = eps();
  return "[" + std::to_string(l[0]) + "," + std::to_string(l[1]) + "]";
}

Weight Weight::parse(const std::string& s) {
  std::string t = s;
  std::erase(t, '[');
  std::erase(t, ']');
  std::erase(t, ' ');
  auto comma = t.find(',');
  if (comma == std::string::npos) throw UsageError("Weight::parse: expected \"m1,m2\", got \"" + s + "\"");
  int m1 = 0, m2 = 0;
  try {
    m1 = std::stoi(t.substr(0, comma));
    m2 = std::stoi(t.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("Weight::parse: expected integers in \"" + s + "\"");
  }
  auto w = try_from_eps(m1, m2);
  if (!w) throw UsageError("Weight::parse: not a dominant weight: \"" + s + "\"");
  return *w;
}

const std::array<std::array<int, 3>, 6>& RootDatum::short_roots() {
  static const std::array<std::array<int, 3>, 6> r = {{{1, -1, 0},
                                                       {-1, 1, 0},
                                                       {0, 1, -1},
                                                       {0, -1, 1},
                                                       {1, 0, -1},
                                                       {-1, 0, 1}}};
  return r;
}

const std::array<std::array<int, 3>, 6>& RootDatum::long_roots() {
  static const std::array<std::array<int, 3>, 6> r = {{{2, -1, -1},
                                                       {-2, 1, 1},
                                                       {-1, 2, -1},
                                                       {1, -2, 1},
                                                       {-1, -1, 2},
                                                       {1, 1, -2}}};
  return r;
}

const std::vector<std::array<int, 3>>& RootDatum::weights_of_v() {
  static const std::vector<std::array<int, 3>> w = [] {
    std::vector<std::array<int, 3>> v(short_roots().begin(), short_roots().end());
    v.push_back({0, 0, 0});
    return v;
  }();
  return w;
}

const std::vector<std::array<int, 3>>& RootDatum::weights_of_adjoint() {
  static const std::vector<std::array<int, 3>> w = [] {
    std::vector<std::array<int, 3>> v(short_roots().begin(), short_roots().end());
    v.insert(v.end(), long_roots().begin(), long_roots().end());
    v.push_back({0, 0, 0});
    v.push_back({0, 0, 0});  // zero weight has multiplicity 2
    return v;
  }();
  return w;
}

int dot(const std::array<int, 3>& x, const std::array<int, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

LevelRule LevelRule::Level(int k) {
  if (k < -2) throw Error("LevelRule: k must be >= -2");
  return LevelRule{false, k};
}

std::string LevelRule::str() const { return generic ? "generic" : "level " + std::to_string(k); }

bool in_alcove(const Weight& w, const LevelRule& rule) {
  if (rule.generic) return true;
  auto l = w.eps();
  if (rule.k % 3 == 0) return 3 * (l[0] + l[1]) <= rule.k;
  return 2 * l[0] + l[1] <= rule.k + 6;
}

std::vector<Weight> alcove_weights(const LevelRule& rule) {
  if (rule.generic) throw Error("alcove_weights: generic rule has an infinite alcove");
  std::vector<Weight> out;
  int m1max = (rule.k % 3 == 0) ? rule.k / 3 : (rule.k + 6) / 2;
  for (int m1 = 0; m1 <= m1max; ++m1)
    for (int m2 = 0; m2 <= m1; ++m2) {
      Weight w = Weight::from_eps(m1, m2);
      if (in_alcove(w, rule)) out.push_back(w);
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Wall {
  std::array<int, 3> theta;
  int c;  // hyperplane (v, theta) = c for the rho-shifted action
};

Wall affine_wall(const LevelRule& rule) {
  // For 3|k the wall x1+x2 = 4+k/3 reads (v, theta) = k+12 with theta the
  // highest long root; for 3 not | k it is 2x1+x2 = k+12 with theta the
  // highest short root. Both are (v, theta) = k+12.
  if (rule.k % 3 == 0) return Wall{{1, 1, -2}, rule.k + 12};
  return Wall{{1, 0, -1}, rule.k + 12};
}

// Bring v into the dominant cone with the classical Weyl group {±sigma}.
// dead when v has a repeated coordinate or a zero coordinate.
bool classical_reduce(std::array<int, 3>& v, int& sign) {
  if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) return false;
  if (v[0] == 0 || v[1] == 0 || v[2] == 0) return false;
  // sort descending, tracking permutation parity
  int perm_sign = 1;
  std::array<int, 3> s = v;
  if (s[0] < s[1]) { std::swap(s[0], s[1]); perm_sign = -perm_sign; }
  if (s[1] < s[2]) { std::swap(s[1], s[2]); perm_sign = -perm_sign; }
  if (s[0] < s[1]) { std::swap(s[0], s[1]); perm_sign = -perm_sign; }
  if (s[1] > 0) {
    v = s;
    sign *= perm_sign;
    return true;
  }
  // use -v; negation acts with determinant +1 on the sum-zero plane
  std::array<int, 3> n = {-v[0], -v[1], -v[2]};
  perm_sign = 1;
  if (n[0] < n[1]) { std::swap(n[0], n[1]); perm_sign = -perm_sign; }
  if (n[1] < n[2]) { std::swap(n[1], n[2]); perm_sign = -perm_sign; }
  if (n[0] < n[1]) { std::swap(n[0], n[1]); perm_sign = -perm_sign; }
  v = n;
  sign *= perm_sign;
  return true;
}

}  // namespace

Reduction reduce_shifted(std::array<int, 3> v, const LevelRule& rule) {
  Reduction r;
  r.sign = 1;
  for (int guard = 0; guard < 1000; ++guard) {
    if (!classical_reduce(v, r.sign)) {
      r.dead = true;
      return r;
    }
    if (rule.generic) {
      r.v = v;
      return r;
    }
    Wall wall = affine_wall(rule);
    int level = dot(v, wall.theta);
    if (level == wall.c) {
      r.dead = true;
      return r;
    }
    if (level < wall.c) {
      r.v = v;
      return r;
    }
    // s0(v) = v - 2((v,theta)-c)/(theta,theta) * theta
    int tt = dot(wall.theta, wall.theta);
    int num = 2 * (level - wall.c);
    if (num % tt != 0) {
      // reflection leaves the weight lattice: treat as dead (cannot happen
      // for weights reachable from fusion products, guarded for safety)
      r.dead = true;
      return r;
    }
    int f = num / tt;
    for (int i = 0; i < 3; ++i) v[i] -= f * wall.theta[i];
    r.sign = -r.sign;
  }
  throw Error("reduce_shifted: did not terminate");
}

AffineReflection affine_reflect(const Weight& w, const LevelRule& rule) {
  if (rule.generic) throw Error("affine_reflect: requires a Level rule");
  auto rho = RootDatum::rho();
  auto l = w.eps();
  std::array<int, 3> v = {l[0] + rho[0], l[1] + rho[1], l[2] + rho[2]};

  AffineReflection out;
  // fixed iff lambda+rho is stabilized by a nontrivial element of W_k,
  // i.e. the orbit representative lands on a wall
  out.fixed = reduce_shifted(v, rule).dead;

  Wall wall = affine_wall(rule);
  int tt = dot(wall.theta, wall.theta);
  int num = 2 * (dot(v, wall.theta) - wall.c);
  // s0 preserves the weight lattice only when tt | num; round through
  // exact integer arithmetic (always exact for G2 weights: tt is 2 or 6 and
  // (v,theta) - c is divisible accordingly)
  if (num % tt != 0) throw Error("affine_reflect: reflection leaves the lattice");
  int f = num / tt;
  std::array<int, 3> rv = {v[0] - f * wall.theta[0], v[1] - f * wall.theta[1], v[2] - f * wall.theta[2]};
  out.eps = {rv[0] - rho[0], rv[1] - rho[1], rv[2] - rho[2]};
  out.sign = -1;
  out.dominant = Weight::try_from_eps(out.eps[0], out.eps[1]);
  return out;
}

}  // namespace g2
