// Test-side series-parallel helpers: a random construction by series and
// parallel operations and a brute-force K4-minor search.
#pragma once

#include "oracles.hpp"

#include <array>

namespace oracle {

struct SPBuild {
  Instance inst;
  int s = 0;
  int t = 1;
};

// Starts from the edge s-t and repeatedly subdivides an edge or adds a
// two-edge path parallel to an edge.  Nodes are named "1".."n".
inline SPBuild random_sp(int target_nodes, int maxcap, std::mt19937_64& rng, int extra_parallel = 0) {
  std::vector<std::pair<int, int>> edges{{0, 1}};
  int n = 2;
  auto step = [&](bool series) {
    auto e = edges[rng() % edges.size()];
    int w = n++;
    if (series) {
      edges.erase(std::find(edges.begin(), edges.end(), e));
      edges.push_back({e.first, w});
      edges.push_back({w, e.second});
    } else {
      edges.push_back({e.first, w});
      edges.push_back({w, e.second});
    }
  };
  // The first operation is parallel so that the result is 2-connected.
  step(false);
  while (n < target_nodes) step(rng() % 2 == 0);
  for (int k = 0; k < extra_parallel; ++k) {
    auto e = edges[rng() % edges.size()];
    edges.push_back(e);
  }
  SPBuild out;
  for (int i = 1; i <= n; ++i) out.inst.add_node(std::to_string(i));
  std::uniform_int_distribution<int> cap(1, maxcap);
  for (auto [a, b] : edges) out.inst.add_supply(a, b, cap(rng));
  return out;
}

inline bool connected_subset(const Instance& inst, const std::vector<int>& set) {
  if (set.empty()) return false;
  std::set<int> in(set.begin(), set.end()), seen{set[0]};
  std::vector<int> stack{set[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [p, c] : inst.supply) {
      int w = p.first == v ? p.second : p.second == v ? p.first : -1;
      if (w >= 0 && in.count(w) && !seen.count(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
    }
  }
  return seen.size() == in.size();
}

inline bool adjacent_sets(const Instance& inst, const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    for (int y : b)
      if (inst.capacity(x, y) > 0) return true;
  return false;
}

inline bool valid_k4(const Instance& inst, const std::array<std::vector<int>, 4>& bs) {
  std::set<int> all;
  std::size_t total = 0;
  for (const auto& b : bs) {
    if (!connected_subset(inst, b)) return false;
    all.insert(b.begin(), b.end());
    total += b.size();
  }
  if (all.size() != total) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!adjacent_sets(inst, bs[i], bs[j])) return false;
  return true;
}

// Every labelling of nodes into four branch sets or unused.
inline bool brute_k4_minor(const Instance& inst) {
  int n = inst.num_nodes();
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 5;
  for (long code = 0; code < total; ++code) {
    long c = code;
    std::array<std::vector<int>, 4> bs;
    for (int i = 0; i < n; ++i) {
      int l = static_cast<int>(c % 5);
      c /= 5;
      if (l < 4) bs[l].push_back(i);
    }
    // Canonical: branch set i starts before branch set i+1.
    bool canon = true;
    for (int i = 0; i < 4; ++i)
      if (bs[i].empty()) canon = false;
    for (int i = 1; canon && i < 4; ++i)
      if (bs[i][0] < bs[i - 1][0]) canon = false;
    if (canon && valid_k4(inst, bs)) return true;
  }
  return false;
}

}  // namespace oracle
