#include "g2/bratteli.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace g2 {

const std::vector<Weight>& BratteliDiagram::succ(int level, const Weight& w) const {
  auto it = edges.find({level, w});
  if (it == edges.end()) throw Error("BratteliDiagram: no vertex " + w.str() + " at level " + std::to_string(level));
  return it->second;
}

bool BratteliDiagram::has_edge(const Weight& from, const Weight& to) const {
  return tensor_V(from, rule).mult(to) > 0;
}

BratteliDiagram build_diagram(int n, const LevelRule& rule) {
  if (n < 0) throw UsageError("build_diagram: n must be >= 0");
  BratteliDiagram d;
  d.n = n;
  d.rule = rule;
  d.levels.resize(static_cast<size_t>(n) + 1);
  d.levels[0] = {kZeroWeight};
  for (int i = 0; i < n; ++i) {
    std::set<Weight> next;
    for (const Weight& w : d.levels[static_cast<size_t>(i)]) {
      std::vector<Weight> succ;
      for (const auto& [v, c] : tensor_V(w, rule)) {
        succ.push_back(v);
        next.insert(v);
      }
      d.edges[{i, w}] = std::move(succ);
    }
    d.levels[static_cast<size_t>(i) + 1].assign(next.begin(), next.end());
  }
  return d;
}

long homdim(const Weight& mu, int n, const LevelRule& rule) {
  if (!in_alcove(mu, rule)) throw NotInAlcove("homdim: " + mu.str() + " outside " + rule.str());
  std::map<Weight, long> counts{{kZeroWeight, 1}};
  for (int i = 0; i < n; ++i) {
    std::map<Weight, long> next;
    for (const auto& [w, c] : counts)
      for (const auto& [v, mult] : tensor_V(w, rule)) next[v] += c;  // edges are multiplicity-free
    counts.swap(next);
  }
  auto it = counts.find(mu);
  return it == counts.end() ? 0 : it->second;
}

std::vector<PathSeq> paths_to(const Weight& mu, int n, const LevelRule& rule) {
  std::vector<PathSeq> out;
  PathSeq cur{kZeroWeight};
  // successors iterate in sorted order, so the DFS emits paths lexicographically
  auto dfs = [&](auto&& self, int level) -> void {
    if (level == n) {
      if (cur.back() == mu) out.push_back(cur);
      return;
    }
    if (n - level < std::abs(cur.back().degree() - mu.degree())) return;  // unreachable
    for (const auto& [v, c] : tensor_V(cur.back(), rule)) {
      cur.push_back(v);
      self(self, level + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

const std::array<Weight, 4>& eigen_channels() {
  static const std::array<Weight, 4> ch = {Weight{2, 0}, kLambda2, kLambda1, kZeroWeight};
  return ch;
}

int Block::distinct_eigenvalues() const {
  int d = 0;
  for (int c : eig_mult) d += (c > 0);
  return d;
}

Block make_block(const Weight& lambda, const Weight& nu, const LevelRule& rule, int i) {
  Block b;
  b.i = i;
  b.lambda = lambda;
  b.nu = nu;
  for (const auto& [mid, c] : tensor_V(lambda, rule))
    if (tensor_V(mid, rule).mult(nu) > 0) b.mids.push_back(mid);
  std::sort(b.mids.begin(), b.mids.end());
  const auto& ch = eigen_channels();
  int total = 0;
  for (int j = 0; j < 4; ++j) {
    b.eig_mult[static_cast<size_t>(j)] = fusion_mult(nu, lambda, ch[static_cast<size_t>(j)], rule);
    total += b.eig_mult[static_cast<size_t>(j)];
  }
  if (total != b.size())
    throw Error("make_block: eigenvalue multiset size " + std::to_string(total) +
                " does not match intermediates " + std::to_string(b.size()) + " for (" +
                lambda.str() + "," + nu.str() + ")");
  return b;
}

std::vector<Block> blocks(const Weight& mu, int n, int i, const LevelRule& rule) {
  if (i < 1 || i > n - 1) throw UsageError("blocks: position must satisfy 1 <= i <= n-1");
  // collect boundary pairs realized by actual paths
  std::set<std::pair<Weight, Weight>> pairs;
  for (const auto& t : paths_to(mu, n, rule))
    pairs.insert({t[static_cast<size_t>(i) - 1], t[static_cast<size_t>(i) + 1]});
  std::vector<Block> out;
  for (const auto& [l, v] : pairs) out.push_back(make_block(l, v, rule, i));
  return out;
}

std::string export_dot(const BratteliDiagram& d) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n";
  for (size_t lvl = 0; lvl < d.levels.size(); ++lvl)
    for (const Weight& w : d.levels[lvl]) {
      auto e = w.eps();
      os << "  L" << lvl << "_" << e[0] << "_" << e[1] << " [label=\"" << w.str() << "\"];\n";
    }
  for (size_t lvl = 0; lvl + 1 < d.levels.size(); ++lvl)
    for (const Weight& w : d.levels[lvl]) {
      auto e = w.eps();
      for (const Weight& v : d.succ(static_cast<int>(lvl), w)) {
        auto f = v.eps();
        os << "  L" << lvl << "_" << e[0] << "_" << e[1] << " -> L" << lvl + 1 << "_" << f[0]
           << "_" << f[1] << ";\n";
      }
    }
  os << "}\n";
  return os.str();
}

std::string export_json(const BratteliDiagram& d) {
  std::ostringstream os;
  os << "{\"levels\":[";
  for (size_t lvl = 0; lvl < d.levels.size(); ++lvl) {
    if (lvl) os << ",";
    os << "[";
    for (size_t j = 0; j < d.levels[lvl].size(); ++j)
      os << (j ? "," : "") << d.levels[lvl][j].str();
    os << "]";
  }
  os << "],\"edges\":[";
  bool first = true;
  for (size_t lvl = 0; lvl + 1 < d.levels.size(); ++lvl)
    for (const Weight& w : d.levels[lvl])
      for (const Weight& v : d.succ(static_cast<int>(lvl), w)) {
        if (!first) os << ",";
        first = false;
        os << "[" << lvl << "," << w.str() << "," << v.str() << "]";
      }
  os << "]}";
  return os.str();
}

std::string export_diagram(const BratteliDiagram& d, const std::string& format) {
  if (format == "dot") return export_dot(d);
  if (format == "json") return export_json(d);
  throw UnknownFormat("export_diagram: unknown format \"" + format + "\"");
}

}  // namespace g2
