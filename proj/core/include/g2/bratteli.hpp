#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "g2/fusion.hpp"
#include "g2/weight.hpp"

namespace g2 {

using PathSeq = std::vector<Weight>;  // mu^(0) = 0 -> ... -> mu^(n)

// Levelled inclusion diagram for V^(x)n under a rule. Level 0 is {0},
// level i+1 is the union of tensor_V supports over level i.
struct BratteliDiagram {
  int n = 0;
  LevelRule rule;
  std::vector<std::vector<Weight>> levels;                 // sorted per level
  std::map<std::pair<int, Weight>, std::vector<Weight>> edges;  // (level i, mu) -> successors

  const std::vector<Weight>& succ(int level, const Weight& w) const;
  bool has_edge(const Weight& from, const Weight& to) const;  // level-free: to in tensor_V(from)
};

BratteliDiagram build_diagram(int n, const LevelRule& rule);

// dim Hom(V_mu, V^(x)n) = number of length-n paths ending at mu
long homdim(const Weight& mu, int n, const LevelRule& rule);

// all length-n paths ending at mu, in lexicographic order of the weight
// sequence (per-level order (|lambda|, a, b))
std::vector<PathSeq> paths_to(const Weight& mu, int n, const LevelRule& rule);

// Matrix block of a braid generator at position i, labelled by the boundary
// pair (mu^(i-1), mu^(i+1)). eig_mult counts the braiding eigenvalue for each
// channel gamma in {2L1, L2, L1, 0}, i.e. N^nu_{lambda,gamma}.
struct Block {
  int i = 0;
  Weight lambda, nu;
  std::vector<Weight> mids;       // sorted intermediates
  std::array<int, 4> eig_mult{};  // multiplicities of (l1, l2, l3, l4)

  int size() const { return static_cast<int>(mids.size()); }
  int distinct_eigenvalues() const;
};

// channel weights in braiding-eigenvalue order (l1, l2, l3, l4)
const std::array<Weight, 4>& eigen_channels();

// the block data for a pair, independent of where it occurs
Block make_block(const Weight& lambda, const Weight& nu, const LevelRule& rule, int i = 0);

// partition of the path basis of Hom(V_mu, V^(x)n) at position i
std::vector<Block> blocks(const Weight& mu, int n, int i, const LevelRule& rule);

std::string export_dot(const BratteliDiagram& d);
std::string export_json(const BratteliDiagram& d);
std::string export_diagram(const BratteliDiagram& d, const std::string& format);  // "dot"|"json"

}  // namespace g2
