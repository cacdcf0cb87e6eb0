#include "multiflow/compliance.hpp"

#include "multiflow/error.hpp"

#include <algorithm>
#include <functional>

namespace multiflow {

const char* compliance_name(Compliance c) {
  switch (c) {
    case Compliance::FullyCompliant: return "FullyCompliant";
    case Compliance::Compliant: return "Compliant";
    case Compliance::NonCompliant: return "NonCompliant";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> out_lists(int n, const Orientation& o) {
  std::vector<std::vector<int>> out(n);
  for (const auto& [p, dir] : o) out[dir.first].push_back(dir.second);
  for (auto& l : out) std::sort(l.begin(), l.end());
  return out;
}

}  // namespace

std::vector<std::vector<bool>> directed_reach(int n, const Orientation& o) {
  auto out = out_lists(n, o);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) {
    std::vector<int> stack{a};
    reach[a][a] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : out[v])
        if (!reach[a][w]) {
          reach[a][w] = true;
          stack.push_back(w);
        }
    }
  }
  return reach;
}

namespace {

Compliance classify_with(const Instance& inst, const std::vector<std::vector<bool>>& reach, int x, int y) {
  if (inst.capacity(x, y) > 0 || is_two_cut(inst, x, y)) return Compliance::FullyCompliant;
  if (reach[x][y] || reach[y][x]) return Compliance::Compliant;
  return Compliance::NonCompliant;
}

void require_two_connected(const Instance& inst) {
  if (!is_two_connected(inst)) throw Error(ErrorKind::NotTwoConnected, "supply graph is not 2-connected");
}

}  // namespace

Compliance classify_edge(const Instance& inst, const SPTree& tree, int x, int y) {
  require_two_connected(inst);
  return classify_with(inst, directed_reach(inst.num_nodes(), orient(tree)), x, y);
}

std::map<NodePair, Compliance> classify_demands(const Instance& inst, const SPTree& tree) {
  require_two_connected(inst);
  auto reach = directed_reach(inst.num_nodes(), orient(tree));
  std::map<NodePair, Compliance> out;
  for (const auto& [p, d] : inst.demand) out[p] = classify_with(inst, reach, p.first, p.second);
  return out;
}

bool witness_holds(const Instance& inst, const SPTree& tree, int u, int v, const TechnicalWitness& w) {
  const auto& P = w.path;
  if (P.size() < 2 || P.front() != tree.s() || P.back() != tree.t()) return false;
  auto o = orient(tree);
  for (std::size_t i = 0; i + 1 < P.size(); ++i) {
    auto it = o.find(key(P[i], P[i + 1]));
    if (it == o.end() || it->second != NodePair{P[i], P[i + 1]}) return false;
  }
  auto pos = [&](int x) {
    auto it = std::find(P.begin(), P.end(), x);
    return it == P.end() ? -1 : static_cast<int>(it - P.begin());
  };
  if (w.isolated != u && w.isolated != v) return false;
  int z = w.isolated, other = z == u ? v : u;
  int pz = pos(z), po = pos(other), pl = pos(w.l), pr = pos(w.r);
  if (pz < 0 || po < 0 || pl < 0 || pr < 0) return false;
  if (pz < po) {
    if (!(pl < pz && pz < pr && pr < po)) return false;
  } else {
    if (!(po < pr && pr < pz && pz < pl)) return false;
  }
  std::vector<bool> rem(inst.num_nodes(), false);
  rem[w.l] = rem[w.r] = true;
  auto lab = component_labels(inst.num_nodes(), inst.supply_adjacency(), rem);
  int c = lab[z];
  if (lab[other] == c) return false;
  for (int term : {tree.s(), tree.t()})
    if (!rem[term] && lab[term] == c) return false;
  return true;
}

TechnicalWitness witness_2cut_on_path(const Instance& inst, const SPTree& tree, int u, int v) {
  if (classify_edge(inst, tree, u, v) != Compliance::Compliant)
    throw Error(ErrorKind::NotApplicable, "demand " + inst.pair_name(key(u, v)) + " is not compliant-only");
  auto out = out_lists(inst.num_nodes(), orient(tree));
  int s = tree.s(), t = tree.t();
  std::vector<int> path{s};
  std::vector<bool> on(inst.num_nodes(), false);
  on[s] = true;
  TechnicalWitness found;
  bool done = false;

  // The lexicographically smaller endpoint is tried as the isolated one first.
  for (int z : {std::min(u, v), std::max(u, v)}) {
    int other = z == u ? v : u;
    auto try_path = [&]() {
      auto pz = std::find(path.begin(), path.end(), z) - path.begin();
      auto po = std::find(path.begin(), path.end(), other) - path.begin();
      auto n = static_cast<long>(path.size());
      if (pz == n || po == n) return false;
      long step = pz < po ? 1 : -1;
      for (long i = pz + step; i != po; i += step)
        for (long j = pz - step; j >= 0 && j < n; j -= step) {
          TechnicalWitness w{path, path[j], path[i], z};
          if (witness_holds(inst, tree, u, v, w)) {
            found = w;
            return true;
          }
        }
      return false;
    };
    std::function<void(int)> dfs = [&](int x) {
      if (done) return;
      if (x == t) {
        done = try_path();
        return;
      }
      for (int y : out[x]) {
        if (on[y]) continue;
        on[y] = true;
        path.push_back(y);
        dfs(y);
        path.pop_back();
        on[y] = false;
        if (done) return;
      }
    };
    dfs(s);
    if (done) return found;
  }
  throw Error(ErrorKind::InternalError, "no separating 2-cut on any directed path for " + inst.pair_name(key(u, v)));
}

}  // namespace multiflow
