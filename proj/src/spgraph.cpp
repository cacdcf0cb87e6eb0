#include "multiflow/spgraph.hpp"

#include "multiflow/core.hpp"
#include "multiflow/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace multiflow {

EdgeMap SPTree::evaluate() const {
  EdgeMap out;
  for (const auto& nd : nodes)
    if (nd.op == SPOp::Edge) out[key(nd.s, nd.t)] += nd.capacity;
  return out;
}

std::vector<int> SPTree::parents() const {
  std::vector<int> par(nodes.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int c : nodes[i].children) par[c] = static_cast<int>(i);
  return par;
}

std::vector<int> SPTree::depths() const {
  std::vector<int> d(nodes.size(), 0);
  std::function<void(int, int)> go = [&](int v, int depth) {
    d[v] = depth;
    for (int c : nodes[v].children) go(c, depth + 1);
  };
  if (root >= 0) go(root, 0);
  return d;
}

std::vector<std::vector<int>> SPTree::spans() const {
  std::vector<std::vector<int>> out(nodes.size());
  std::function<void(int)> go = [&](int v) {
    std::set<int> acc{nodes[v].s, nodes[v].t};
    for (int c : nodes[v].children) {
      go(c);
      acc.insert(out[c].begin(), out[c].end());
    }
    out[v].assign(acc.begin(), acc.end());
  };
  if (root >= 0) go(root);
  return out;
}

int SPTree::lowest_common(int x, int y) const {
  auto sp = spans();
  auto dep = depths();
  int best = -1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& s = sp[i];
    if (!std::binary_search(s.begin(), s.end(), x) || !std::binary_search(s.begin(), s.end(), y)) continue;
    if (best < 0 || dep[i] > dep[best]) best = static_cast<int>(i);
  }
  return best;
}

bool has_k4_minor(int n, const std::vector<NodePair>& edges) {
  std::vector<std::set<int>> adj(n);
  for (auto [a, b] : edges)
    if (a != b) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
  std::vector<bool> gone(n, false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v = 0; v < n; ++v) {
      if (gone[v] || adj[v].size() > 2) continue;
      std::vector<int> nb(adj[v].begin(), adj[v].end());
      for (int w : nb) adj[w].erase(v);
      if (nb.size() == 2) {
        adj[nb[0]].insert(nb[1]);
        adj[nb[1]].insert(nb[0]);
      }
      adj[v].clear();
      gone[v] = true;
      progress = true;
    }
  }
  for (int v = 0; v < n; ++v)
    if (!gone[v]) return true;
  return false;
}

namespace {

class Builder {
 public:
  SPTree tree;
  std::map<NodePair, int> edge_node;
  std::map<int, std::set<int>> adj;

  int add_node(SPNode nd) {
    tree.nodes.push_back(std::move(nd));
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  void flip(int id) {
    auto& nd = tree.nodes[id];
    std::swap(nd.s, nd.t);
    if (nd.op == SPOp::Series) std::reverse(nd.children.begin(), nd.children.end());
    for (int c : tree.nodes[id].children) flip(c);
  }

  int oriented(int id, int a, int b) {
    if (tree.nodes[id].s != a) flip(id);
    (void)b;
    return id;
  }

  int combine(SPOp op, int a, int b, const std::vector<int>& parts) {
    SPNode nd;
    nd.op = op;
    nd.s = a;
    nd.t = b;
    for (int p : parts) {
      if (tree.nodes[p].op == op)
        nd.children.insert(nd.children.end(), tree.nodes[p].children.begin(), tree.nodes[p].children.end());
      else
        nd.children.push_back(p);
    }
    return add_node(std::move(nd));
  }

  void put_edge(int a, int b, int id) {
    auto k = key(a, b);
    auto it = edge_node.find(k);
    if (it == edge_node.end()) {
      edge_node[k] = id;
      adj[a].insert(b);
      adj[b].insert(a);
      return;
    }
    int old = oriented(it->second, a, b);
    int nid = oriented(id, a, b);
    it->second = combine(SPOp::Parallel, a, b, {old, nid});
  }

  void remove_edge(int a, int b) {
    edge_node.erase(key(a, b));
    adj[a].erase(b);
    adj[b].erase(a);
    if (adj[a].empty()) adj.erase(a);
    if (adj[b].empty()) adj.erase(b);
  }
};

}  // namespace

std::optional<SPTree> decompose_with_terminals(const Instance& inst, int s, int t) {
  if (inst.supply.empty() || s == t) return std::nullopt;
  Builder b;
  for (const auto& [p, c] : inst.supply) {
    SPNode leaf;
    leaf.op = SPOp::Edge;
    leaf.s = p.first;
    leaf.t = p.second;
    leaf.capacity = c;
    b.put_edge(p.first, p.second, b.add_node(leaf));
  }
  if (!b.adj.count(s) || !b.adj.count(t)) return std::nullopt;
  while (true) {
    int pick = -1;
    for (const auto& [v, nb] : b.adj)
      if (v != s && v != t && nb.size() == 2) {
        pick = v;
        break;
      }
    if (pick < 0) break;
    int x = *b.adj[pick].begin();
    int y = *b.adj[pick].rbegin();
    int e1 = b.oriented(b.edge_node.at(key(x, pick)), x, pick);
    int e2 = b.oriented(b.edge_node.at(key(pick, y)), pick, y);
    int series = b.combine(SPOp::Series, x, y, {e1, e2});
    b.remove_edge(x, pick);
    b.remove_edge(pick, y);
    b.put_edge(x, y, series);
  }
  if (b.edge_node.size() != 1 || !b.edge_node.count(key(s, t))) return std::nullopt;
  b.tree.root = b.oriented(b.edge_node.begin()->second, s, t);
  // Compact to the nodes reachable from the root.
  SPTree out;
  std::function<int(int)> copy = [&](int v) {
    SPNode nd = b.tree.nodes[v];
    std::vector<int> kids;
    for (int c : nd.children) kids.push_back(copy(c));
    nd.children = kids;
    out.nodes.push_back(nd);
    return static_cast<int>(out.nodes.size()) - 1;
  };
  out.root = copy(b.tree.root);
  return out;
}

namespace {

std::array<std::vector<int>, 4> k4_witness(int n, std::vector<NodePair> edges) {
  std::vector<std::vector<int>> branch(n);
  for (int v = 0; v < n; ++v) branch[v] = {v};
  auto normalize = [](std::vector<NodePair> es) {
    for (auto& e : es) e = key(e.first, e.second);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    es.erase(std::remove_if(es.begin(), es.end(), [](const NodePair& e) { return e.first == e.second; }), es.end());
    return es;
  };
  edges = normalize(edges);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size();) {
      auto test = edges;
      test.erase(test.begin() + static_cast<long>(i));
      if (has_k4_minor(n, test)) {
        edges = test;
        changed = true;
      } else {
        ++i;
      }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [a, b] = edges[i];
      std::vector<NodePair> test;
      for (auto [x, y] : edges) test.push_back({x == b ? a : x, y == b ? a : y});
      test = normalize(test);
      if (has_k4_minor(n, test)) {
        edges = test;
        branch[a].insert(branch[a].end(), branch[b].begin(), branch[b].end());
        branch[b].clear();
        changed = true;
        break;
      }
    }
  }
  std::set<int> left;
  for (auto [a, b] : edges) left.insert({a, b});
  std::array<std::vector<int>, 4> out;
  int k = 0;
  for (int v : left) {
    if (k == 4) throw Error(ErrorKind::InternalError, "minor reduction left more than four nodes");
    out[k] = branch[v];
    std::sort(out[k].begin(), out[k].end());
    ++k;
  }
  if (k != 4) throw Error(ErrorKind::InternalError, "minor reduction did not end at K4");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SPRecognition recognize_sp(const Instance& inst) {
  if (inst.supply.empty()) throw Error(ErrorKind::InvalidInput, "supply graph has no edges");
  auto adj = inst.supply_adjacency();
  std::vector<int> act;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!adj[v].empty()) act.push_back(v);
  if (!connected_on(act, adj)) throw Error(ErrorKind::NotTwoConnected, "supply graph is disconnected");
  SPRecognition rec;
  int s = act.front();
  std::vector<int> order;
  for (int v : act)
    if (v != s && !std::binary_search(adj[s].begin(), adj[s].end(), v)) order.push_back(v);
  if (!adj[s].empty()) order.push_back(adj[s].front());
  for (int t : order) {
    if (auto tree = decompose_with_terminals(inst, s, t)) {
      rec.ok = true;
      rec.tree = std::move(*tree);
      return rec;
    }
  }
  std::vector<NodePair> edges;
  for (const auto& [p, c] : inst.supply) edges.push_back(p);
  if (!has_k4_minor(inst.num_nodes(), edges))
    throw Error(ErrorKind::NotTwoConnected, "graph has no K4 minor but is not two-terminal series-parallel");
  rec.branch_sets = k4_witness(inst.num_nodes(), edges);
  return rec;
}

Orientation orient(const SPTree& tree) {
  Orientation o;
  for (const auto& nd : tree.nodes)
    if (nd.op == SPOp::Edge) o[key(nd.s, nd.t)] = {nd.s, nd.t};
  return o;
}

bool separates(const Instance& inst, const std::vector<int>& removed, int a, int b) {
  std::vector<bool> rem(inst.num_nodes(), false);
  for (int v : removed) rem[v] = true;
  if (rem[a] || rem[b]) return false;
  auto lab = component_labels(inst.num_nodes(), inst.supply_adjacency(), rem);
  return lab[a] != lab[b];
}

bool is_two_cut(const Instance& inst, int u, int v) {
  if (u == v) return false;
  std::vector<bool> rem(inst.num_nodes(), false);
  rem[u] = rem[v] = true;
  auto adj = inst.supply_adjacency();
  auto lab = component_labels(inst.num_nodes(), adj, rem);
  std::set<int> labels;
  for (int w = 0; w < inst.num_nodes(); ++w)
    if (!rem[w] && !adj[w].empty()) labels.insert(lab[w]);
  return labels.size() >= 2;
}

namespace {

// Components of G - {u, v} restricted to active nodes, each sorted.
std::vector<std::vector<int>> bridge_components(const Instance& inst, int u, int v) {
  auto adj = inst.supply_adjacency();
  std::vector<bool> rem(inst.num_nodes(), false);
  rem[u] = rem[v] = true;
  auto lab = component_labels(inst.num_nodes(), adj, rem);
  std::map<int, std::vector<int>> groups;
  for (int w = 0; w < inst.num_nodes(); ++w)
    if (!rem[w] && !adj[w].empty()) groups[lab[w]].push_back(w);
  std::vector<std::vector<int>> out;
  for (auto& [l, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<NodePair> strict_2cuts(const Instance& inst) {
  auto adj = inst.supply_adjacency();
  std::vector<int> act;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!adj[v].empty()) act.push_back(v);
  std::vector<NodePair> out;
  for (std::size_t i = 0; i < act.size(); ++i)
    for (std::size_t j = i + 1; j < act.size(); ++j) {
      int u = act[i], v = act[j];
      auto comps = bridge_components(inst, u, v);
      std::size_t bridges = comps.size() + (inst.capacity(u, v) > 0 ? 1 : 0);
      if (comps.size() >= 2 && bridges >= 3) out.push_back({u, v});
    }
  return out;
}

StrictCut find_strict_2cut(const Instance& inst) {
  if (!is_two_connected(inst)) throw Error(ErrorKind::NotTwoConnected, "supply graph is not 2-node-connected");
  auto adj = inst.supply_adjacency();
  bool ring = true;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!adj[v].empty() && adj[v].size() != 2) ring = false;
  StrictCut res;
  if (ring) {
    res.ring = true;
    return res;
  }
  auto cuts = strict_2cuts(inst);
  if (cuts.empty()) throw Error(ErrorKind::NotSeriesParallel, "no strict 2-cut in a non-ring graph");
  res.u = cuts.front().first;
  res.v = cuts.front().second;
  return res;
}

std::optional<Partition> choose_partition(const Instance& inst, int u, int v) {
  auto comps = bridge_components(inst, u, v);
  int k = static_cast<int>(comps.size());
  if (k < 2) return std::nullopt;
  std::vector<int> comp_of(inst.num_nodes(), -1);
  for (int i = 0; i < k; ++i)
    for (int w : comps[i]) comp_of[w] = i;
  // Union components joined by a demand.
  std::vector<int> uf(k);
  for (int i = 0; i < k; ++i) uf[i] = i;
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (const auto& [p, d] : inst.demand) {
    int a = comp_of[p.first], b = comp_of[p.second];
    if (a >= 0 && b >= 0) uf[find(a)] = find(b);
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < k; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> gl;
  for (auto& [r, g] : groups) gl.push_back(g);
  int g = static_cast<int>(gl.size());
  if (g < 2 || g > 20) return std::nullopt;
  std::optional<Partition> best;
  std::size_t best_size = 0;
  for (long mask = 1; mask < (1L << (g - 1)); ++mask) {
    // Group 0 always stays with the first side.
    std::vector<int> a{u, v}, b{u, v};
    for (int i = 0; i < g; ++i) {
      auto& side = (i > 0 && (mask >> (i - 1) & 1)) ? b : a;
      for (int c : gl[i]) side.insert(side.end(), comps[c].begin(), comps[c].end());
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t larger = std::max(a.size(), b.size());
    // The side holding the smallest non-terminal node is listed first.
    int amin = -1, bmin = -1;
    for (int w : a)
      if (w != u && w != v) { amin = w; break; }
    for (int w : b)
      if (w != u && w != v) { bmin = w; break; }
    if (bmin < amin) std::swap(a, b);
    Partition p{std::min(u, v), std::max(u, v), a, b};
    if (!best || larger < best_size || (larger == best_size && p.first < best->first)) {
      best = p;
      best_size = larger;
    }
  }
  return best;
}

SplitResult split_at_2cut(const Instance& inst, const Partition& part) {
  int u = part.u, v = part.v;
  std::vector<bool> in_a(inst.num_nodes(), false), in_b(inst.num_nodes(), false);
  for (int w : part.first) in_a[w] = true;
  for (int w : part.second) in_b[w] = true;
  Instance a, b;
  a.nodes = b.nodes = inst.nodes;
  for (const auto& [p, c] : inst.supply) {
    if (in_a[p.first] && in_a[p.second])
      a.supply[p] = c;
    else if (in_b[p.first] && in_b[p.second])
      b.supply[p] = c;
    else
      throw Error(ErrorKind::InvalidInput, "partition does not cover supply edge " + inst.pair_name(p));
  }
  for (const auto& [p, d] : inst.demand) {
    if (in_a[p.first] && in_a[p.second])
      a.demand[p] = d;
    else if (in_b[p.first] && in_b[p.second])
      b.demand[p] = d;
    else
      throw Error(ErrorKind::CrossingDemand, "demand " + inst.pair_name(p) + " crosses the partition");
  }
  // Largest demand-minus-supply over u-v separating sets of one side.
  auto excess = [&](const Instance& side) {
    auto c = min_separating_cut(side, u, v);
    return c ? Rational(-c->surplus) : Rational(0);
  };
  Rational ma = excess(a), mb = excess(b);
  if (ma > 0 && mb > 0) throw Error(ErrorKind::BothDeficitsPositive, "both sides of the 2-cut are deficient");
  SplitResult res;
  res.u = u;
  res.v = v;
  if (mb > ma) {
    std::swap(a, b);
    std::swap(ma, mb);
  }
  Rational k = max_of(ma, 0);
  // With odd parity at u and v and slack on both sides, one unit keeps both
  // halves Eulerian; the second side has at least that much slack.
  if (k == 0 && inst.is_integral() && is_integer(ma) && mpz_odd_p(ma.get_num_mpz_t())) k = 1;
  res.deficit = k;
  res.first = std::move(a);
  res.second = std::move(b);
  if (k > 0) {
    res.first.add_supply(u, v, k);
    res.second.add_demand(u, v, k);
  }
  return res;
}

Routing lift_split(const Routing& first, const Routing& second, const SplitResult& split) {
  Routing r1 = first, r2 = second;
  if (split.deficit > 0) {
    auto pool = r2.draw(split.u, split.v, split.deficit);
    for (const auto& piece : pool) substitute_hop(r1, split.u, split.v, piece.path, piece.amount);
  }
  r1.merge(r2);
  r1.integral = first.integral && second.integral;
  return r1;
}

std::optional<NodePair> highest_2cut(const Instance& inst, const SPTree& tree, int x, int y) {
  if (inst.capacity(x, y) > 0) return std::nullopt;
  if (is_two_cut(inst, x, y)) return std::nullopt;
  int l = tree.lowest_common(x, y);
  if (l < 0) return std::nullopt;
  int s = tree.nodes[l].s, t = tree.nodes[l].t;
  if (x == s || x == t || y == s || y == t) return std::nullopt;
  if (!separates(inst, {s, t}, x, y)) return std::nullopt;
  return NodePair{s, t};
}

}  // namespace multiflow
