#include "doctest.h"
#include "sp_oracles.hpp"

#include "multiflow/core.hpp"
#include "multiflow/error.hpp"
#include "multiflow/spgraph.hpp"

using namespace multiflow;
using oracle::build;

namespace {

// K_{2,3}: hubs 1, 2 and spokes 3, 4, 5.
Instance k23(Rational cap = 1) {
  return build(5, {{1, 3, cap}, {1, 4, cap}, {1, 5, cap}, {3, 2, cap}, {4, 2, cap}, {5, 2, cap}}, {});
}

bool acyclic_with_unique_ends(const Instance& inst, const Orientation& o, int s, int t) {
  int n = inst.num_nodes();
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& [e, arc] : o) {
    ++outdeg[arc.first];
    ++indeg[arc.second];
    out[arc.first].push_back(arc.second);
  }
  for (int v = 0; v < n; ++v) {
    if (indeg[v] + outdeg[v] == 0) continue;
    if (v != s && indeg[v] == 0) return false;
    if (v != t && outdeg[v] == 0) return false;
  }
  if (indeg[s] != 0 || outdeg[t] != 0) return false;
  // Kahn.
  std::vector<int> deg = indeg, q;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 0) q.push_back(v);
  std::size_t seen = 0;
  while (!q.empty()) {
    int v = q.back();
    q.pop_back();
    ++seen;
    for (int w : out[v])
      if (--deg[w] == 0) q.push_back(w);
  }
  return seen == static_cast<std::size_t>(n);
}

bool reachable(const Orientation& o, int n, int a, int b) {
  std::vector<std::vector<int>> out(n);
  for (const auto& [e, arc] : o) out[arc.first].push_back(arc.second);
  std::vector<bool> seen(n, false);
  std::vector<int> st{a};
  seen[a] = true;
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    if (v == b) return true;
    for (int w : out[v])
      if (!seen[w]) {
        seen[w] = true;
        st.push_back(w);
      }
  }
  return false;
}

bool central(const Instance& inst, const std::set<int>& S) {
  std::vector<int> in(S.begin(), S.end()), out;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!S.count(v)) out.push_back(v);
  return oracle::connected_subset(inst, in) && oracle::connected_subset(inst, out);
}

}  // namespace

TEST_CASE("recognize_sp examples") {
  auto edge = build(2, {{1, 2, 3}}, {});
  auto rec = recognize_sp(edge);
  REQUIRE(rec.ok);
  CHECK(rec.tree.nodes[rec.tree.root].op == SPOp::Edge);
  CHECK(rec.tree.nodes[rec.tree.root].capacity == 3);

  auto k4 = build(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}, {2, 3, 1}, {2, 4, 1}, {3, 4, 1}}, {});
  auto bad = recognize_sp(k4);
  CHECK_FALSE(bad.ok);
  std::array<std::vector<int>, 4> singletons{{{0}, {1}, {2}, {3}}};
  CHECK(bad.branch_sets == singletons);

  auto k = recognize_sp(k23());
  REQUIRE(k.ok);
  const auto& root = k.tree.nodes[k.tree.root];
  CHECK(root.op == SPOp::Parallel);
  CHECK(root.s == 0);
  CHECK(root.t == 1);
  REQUIRE(root.children.size() == 3);
  for (int c : root.children) {
    CHECK(k.tree.nodes[c].op == SPOp::Series);
    CHECK(k.tree.nodes[c].children.size() == 2);
  }

  // Four-cycle 1-2-3-4 decomposes between 1 and 3.
  auto c4 = build(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}}, {});
  auto rc = recognize_sp(c4);
  REQUIRE(rc.ok);
  CHECK(rc.tree.s() == 0);
  CHECK(rc.tree.t() == 2);
}

TEST_CASE("recognition round trip on generated series-parallel graphs") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    auto g = oracle::random_sp(3 + static_cast<int>(rng() % 10), 4, rng, static_cast<int>(rng() % 3));
    auto rec = recognize_sp(g.inst);
    REQUIRE(rec.ok);
    CHECK(rec.tree.evaluate() == g.inst.supply);
    auto o = orient(rec.tree);
    CHECK(o.size() == g.inst.supply.size());
    CHECK(acyclic_with_unique_ends(g.inst, o, rec.tree.s(), rec.tree.t()));
    // Every arc extends to an s-t path.
    for (const auto& [e, arc] : o) {
      CHECK(reachable(o, g.inst.num_nodes(), rec.tree.s(), arc.first));
      CHECK(reachable(o, g.inst.num_nodes(), arc.second, rec.tree.t()));
    }
  }
}

TEST_CASE("recognition agrees with brute-force K4 minor search") {
  std::mt19937_64 rng(55);
  int nonsp = 0, sp = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng() % 3);
    auto inst = oracle::witnessed(n, 3 + static_cast<int>(rng() % 4), 1, 0, rng);
    bool minor = oracle::brute_k4_minor(inst);
    std::vector<NodePair> edges;
    for (const auto& [p, c] : inst.supply) edges.push_back(p);
    CHECK(has_k4_minor(n, edges) == minor);
    if (!is_two_connected(inst)) continue;
    auto rec = recognize_sp(inst);
    CHECK(rec.ok == !minor);
    if (!rec.ok) {
      ++nonsp;
      CHECK(oracle::valid_k4(inst, rec.branch_sets));
    } else {
      ++sp;
      CHECK(rec.tree.evaluate() == inst.supply);
    }
  }
  CHECK(nonsp > 0);
  CHECK(sp > 0);
}

TEST_CASE("separable graph without K4 is rejected") {
  // A path is two-terminal between its ends; a star is not.
  auto path = build(3, {{1, 2, 1}, {2, 3, 1}}, {});
  CHECK(recognize_sp(path).ok);
  auto star = build(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}}, {});
  CHECK_THROWS_AS(recognize_sp(star), Error);
}

TEST_CASE("strict 2-cuts") {
  auto c5 = build(5, {{1, 2, 2}, {2, 3, 1}, {3, 4, 5}, {4, 5, 1}, {5, 1, 3}}, {});
  CHECK(find_strict_2cut(c5).ring);
  auto sc = find_strict_2cut(k23());
  CHECK_FALSE(sc.ring);
  CHECK(sc.u == 0);
  CHECK(sc.v == 1);
  // Spoke 3 subdivided twice: 1-3-6-7-2.
  auto sub = build(7, {{1, 3, 1}, {3, 6, 1}, {6, 7, 1}, {7, 2, 1}, {1, 4, 1}, {4, 2, 1}, {1, 5, 1}, {5, 2, 1}}, {});
  auto ss = find_strict_2cut(sub);
  CHECK(ss.u == 0);
  CHECK(ss.v == 1);
  auto path = build(3, {{1, 2, 1}, {2, 3, 1}}, {});
  CHECK_THROWS_AS(find_strict_2cut(path), Error);
}

TEST_CASE("split with zero deficits") {
  auto inst = k23();
  inst.add_demand(2, 3, 2);
  auto part = choose_partition(inst, 0, 1);
  REQUIRE(part.has_value());
  CHECK(part->first == std::vector<int>{0, 1, 2, 3});
  CHECK(part->second == std::vector<int>{0, 1, 4});
  auto split = split_at_2cut(inst, *part);
  // Oracle: each side alone already satisfies the cut condition.
  CHECK(oracle::cut_ok(restrict_to(inst, part->first)));
  CHECK(oracle::cut_ok(restrict_to(inst, part->second)));
  CHECK(split.deficit == 0);
  CHECK(split.first.capacity(0, 1) == 0);
  CHECK(split.second.demand_of(0, 1) == 0);
}

TEST_CASE("split preserves cut condition and parity and lifts routings") {
  std::mt19937_64 rng(77);
  int lifted = 0, positive = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto g = oracle::random_sp(5 + static_cast<int>(rng() % 4), 2, rng);
    auto inst = g.inst;
    std::uniform_int_distribution<int> node(0, inst.num_nodes() - 1);
    auto adj = inst.supply_adjacency();
    std::map<NodePair, Rational> left(inst.supply.begin(), inst.supply.end());
    for (int k = 0; k < 5; ++k) {
      int a = node(rng), b = node(rng);
      if (a == b) continue;
      std::vector<std::vector<int>> res(inst.num_nodes());
      for (const auto& [e, c] : left)
        if (c >= 1) {
          res[e.first].push_back(e.second);
          res[e.second].push_back(e.first);
        }
      auto p = oracle::random_path(res, a, b, rng);
      if (p.empty()) continue;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) left[key(p[i], p[i + 1])] -= 1;
      inst.add_demand(a, b, 1);
    }
    for (auto [u, v] : strict_2cuts(inst)) {
      auto part = choose_partition(inst, u, v);
      if (!part) continue;
      auto split = split_at_2cut(inst, *part);
      if (split.deficit > 0) ++positive;
      CHECK(oracle::cut_ok(split.first));
      CHECK(oracle::cut_ok(split.second));
      if (is_eulerian(inst)) {
        CHECK(is_eulerian(split.first));
        CHECK(is_eulerian(split.second));
      }
      auto r1 = exhaustive_integral_route(split.first, 1);
      auto r2 = exhaustive_integral_route(split.second, 1);
      if (r1 && r2) {
        auto r = lift_split(*r1, *r2, split);
        CHECK(oracle::routes(inst, r, 1));
        ++lifted;
      }
      break;
    }
  }
  CHECK(lifted > 50);
  CHECK(positive > 0);
}

TEST_CASE("highest 2-cut") {
  auto inst = k23();
  CHECK(highest_2cut(inst, recognize_sp(inst).tree, 2, 3) == NodePair{0, 1});
  CHECK_FALSE(highest_2cut(inst, recognize_sp(inst).tree, 0, 2).has_value());
  // Two K_{2,3} gadgets in series at node 6: s=1, hubs 1-6 and 6-2.
  auto two = build(9,
                   {{1, 3, 1}, {1, 4, 1}, {1, 5, 1}, {3, 6, 1}, {4, 6, 1}, {5, 6, 1},
                    {6, 7, 1}, {6, 8, 1}, {6, 9, 1}, {7, 2, 1}, {8, 2, 1}, {9, 2, 1}},
                   {});
  auto tree = decompose_with_terminals(two, 0, 1);
  REQUIRE(tree.has_value());
  CHECK_FALSE(highest_2cut(two, *tree, 2, 6).has_value());
  CHECK(highest_2cut(two, *tree, 2, 3) == NodePair{0, 5});
}

TEST_CASE("central sets split by a 2-cut stay central") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto g = oracle::random_sp(5 + static_cast<int>(rng() % 4), 1, rng);
    const auto& inst = g.inst;
    int n = inst.num_nodes();
    for (int l = 0; l < n; ++l)
      for (int r = l + 1; r < n; ++r) {
        std::vector<bool> rem(n, false);
        rem[l] = rem[r] = true;
        auto lab = component_labels(n, inst.supply_adjacency(), rem);
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v) {
            if (rem[u] || rem[v] || lab[u] == lab[v]) continue;
            std::vector<std::set<int>> Ls, Rs;
            for (long mask = 0; mask < (1L << n); ++mask) {
              std::set<int> S;
              for (int i = 0; i < n; ++i)
                if (mask >> i & 1) S.insert(i);
              if (S.count(u) || S.count(v) || S.size() == static_cast<std::size_t>(n)) continue;
              if (!central(inst, S)) continue;
              if (S.count(l) && !S.count(r)) Ls.push_back(S);
              if (S.count(r) && !S.count(l)) Rs.push_back(S);
            }
            for (const auto& L : Ls)
              for (const auto& R : Rs) {
                std::set<int> a, b;
                std::set_difference(L.begin(), L.end(), R.begin(), R.end(), std::inserter(a, a.end()));
                std::set_difference(R.begin(), R.end(), L.begin(), L.end(), std::inserter(b, b.end()));
                CHECK(central(inst, a));
                CHECK(central(inst, b));
                ++checked;
              }
            goto next_pair;
          }
      next_pair:;
      }
  }
  CHECK(checked > 100);
}

TEST_CASE("directed paths cross a central cut at most twice") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_sp(4 + static_cast<int>(rng() % 5), 1, rng);
    const auto& inst = g.inst;
    int n = inst.num_nodes();
    auto tree = recognize_sp(inst).tree;
    auto o = orient(tree);
    std::vector<std::vector<int>> out(n);
    for (const auto& [e, arc] : o) out[arc.first].push_back(arc.second);
    std::vector<std::vector<int>> paths;
    std::vector<int> cur;
    std::function<void(int)> dfs = [&](int v) {
      cur.push_back(v);
      paths.push_back(cur);
      for (int w : out[v]) dfs(w);
      cur.pop_back();
    };
    for (int v = 0; v < n; ++v) dfs(v);
    for (long mask = 1; mask + 1 < (1L << n); ++mask) {
      std::set<int> S;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) S.insert(i);
      if (!central(inst, S)) continue;
      for (const auto& p : paths) {
        int cross = 0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) cross += S.count(p[i]) != S.count(p[i + 1]);
        CHECK(cross <= 2);
      }
    }
  }
}
