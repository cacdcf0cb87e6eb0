#include "multiflow/instance.hpp"

#include "multiflow/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace multiflow {

int Instance::index_of(const std::string& name) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes[i] == name) return i;
  return -1;
}

int Instance::add_node(const std::string& name) {
  int i = index_of(name);
  if (i >= 0) return i;
  nodes.push_back(name);
  return num_nodes() - 1;
}

namespace {

void check_pair(const Instance& inst, int a, int b) {
  if (a < 0 || b < 0 || a >= inst.num_nodes() || b >= inst.num_nodes())
    throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
}

void add_to(EdgeMap& m, int a, int b, Rational w) {
  w.canonicalize();
  if (a == b) return;
  if (w < 0) throw Error(ErrorKind::InvalidInput, "negative edge value");
  if (w == 0) return;
  m[key(a, b)] += w;
}

void set_in(EdgeMap& m, int a, int b, Rational w) {
  w.canonicalize();
  if (a == b) return;
  if (w < 0) throw Error(ErrorKind::InvalidInput, "negative edge value");
  if (w == 0)
    m.erase(key(a, b));
  else
    m[key(a, b)] = w;
}

Rational get_from(const EdgeMap& m, int a, int b) {
  auto it = m.find(key(a, b));
  return it == m.end() ? Rational(0) : it->second;
}

}  // namespace

void Instance::add_supply(int a, int b, const Rational& w) { check_pair(*this, a, b); add_to(supply, a, b, w); }
void Instance::add_demand(int a, int b, const Rational& w) { check_pair(*this, a, b); add_to(demand, a, b, w); }
void Instance::set_supply(int a, int b, const Rational& w) { check_pair(*this, a, b); set_in(supply, a, b, w); }
void Instance::set_demand(int a, int b, const Rational& w) { check_pair(*this, a, b); set_in(demand, a, b, w); }
Rational Instance::capacity(int a, int b) const { return get_from(supply, a, b); }
Rational Instance::demand_of(int a, int b) const { return get_from(demand, a, b); }

bool Instance::is_integral() const {
  for (const auto& [p, w] : supply)
    if (!is_integer(w)) return false;
  for (const auto& [p, w] : demand)
    if (!is_integer(w)) return false;
  return true;
}

Rational Instance::total_capacity() const {
  Rational s = 0;
  for (const auto& [p, w] : supply) s += w;
  return s;
}

Rational Instance::total_demand() const {
  Rational s = 0;
  for (const auto& [p, w] : demand) s += w;
  return s;
}

std::vector<int> Instance::active_nodes() const {
  std::vector<bool> on(nodes.size(), false);
  for (const auto& [p, w] : supply) on[p.first] = on[p.second] = true;
  for (const auto& [p, w] : demand) on[p.first] = on[p.second] = true;
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i)
    if (on[i]) out.push_back(i);
  return out;
}

std::vector<std::vector<int>> Instance::supply_adjacency() const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& [p, w] : supply) {
    adj[p.first].push_back(p.second);
    adj[p.second].push_back(p.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<Rational> Instance::demand_degree() const {
  std::vector<Rational> deg(nodes.size(), Rational(0));
  for (const auto& [p, w] : demand) {
    deg[p.first] += w;
    deg[p.second] += w;
  }
  return deg;
}

Instance Instance::scaled_supply(Rational factor) const {
  factor.canonicalize();
  Instance out = *this;
  for (auto& [p, w] : out.supply) w *= factor;
  if (factor == 0) out.supply.clear();
  return out;
}

Instance Instance::scaled_demand(Rational factor) const {
  factor.canonicalize();
  Instance out = *this;
  for (auto& [p, w] : out.demand) w *= factor;
  if (factor == 0) out.demand.clear();
  return out;
}

Instance Instance::with_demands(const EdgeMap& d) const {
  Instance out = *this;
  out.demand.clear();
  for (const auto& [p, w] : d) out.add_demand(p.first, p.second, w);
  return out;
}

std::vector<int> component_labels(int n, const std::vector<std::vector<int>>& adj,
                                  const std::vector<bool>& removed) {
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0 || (!removed.empty() && removed[s])) continue;
    label[s] = next;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (label[w] >= 0 || (!removed.empty() && removed[w])) continue;
        label[w] = next;
        stack.push_back(w);
      }
    }
    ++next;
  }
  return label;
}

bool connected_on(const std::vector<int>& nodes, const std::vector<std::vector<int>>& adj) {
  if (nodes.empty()) return true;
  std::vector<bool> in(adj.size(), false), seen(adj.size(), false);
  for (int v : nodes) in[v] = true;
  std::vector<int> stack{nodes[0]};
  seen[nodes[0]] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (in[w] && !seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == nodes.size();
}

bool is_two_connected(const Instance& inst) {
  std::vector<int> act;
  auto adj = inst.supply_adjacency();
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!adj[v].empty()) act.push_back(v);
  if (act.size() < 3) return act.size() == 2;
  if (!connected_on(act, adj)) return false;
  for (int x : act) {
    std::vector<int> rest;
    for (int v : act)
      if (v != x) rest.push_back(v);
    std::vector<std::vector<int>> sub(adj.size());
    for (int v : rest)
      for (int w : adj[v])
        if (w != x) sub[v].push_back(w);
    if (!connected_on(rest, sub)) return false;
  }
  return true;
}

BlockStructure biconnected_blocks(int n, const std::vector<std::vector<int>>& adj) {
  BlockStructure bs;
  bs.is_cut.assign(n, false);
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> estack;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (int w : adj[v]) {
      if (w == parent) continue;
      if (disc[w] < 0) {
        estack.push_back({v, w});
        ++children;
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if ((parent < 0 && children > 1) || (parent >= 0 && low[w] >= disc[v])) bs.is_cut[v] = true;
        if (low[w] >= disc[v]) {
          std::vector<int> block;
          while (true) {
            auto e = estack.back();
            estack.pop_back();
            block.push_back(e.first);
            block.push_back(e.second);
            if (e.first == v && e.second == w) break;
          }
          std::sort(block.begin(), block.end());
          block.erase(std::unique(block.begin(), block.end()), block.end());
          bs.blocks.push_back(block);
        }
      } else if (disc[w] < disc[v]) {
        estack.push_back({v, w});
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0 && !adj[v].empty()) dfs(v, -1);
  std::sort(bs.blocks.begin(), bs.blocks.end());
  return bs;
}

std::vector<int> block_chain(const BlockStructure& bs, int n, int x, int y) {
  // Block-cut tree: node ids 0..n-1 for graph nodes, n+i for block i.
  int nb = static_cast<int>(bs.blocks.size());
  std::vector<std::vector<int>> tree(n + nb);
  for (int i = 0; i < nb; ++i)
    for (int v : bs.blocks[i]) {
      tree[v].push_back(n + i);
      tree[n + i].push_back(v);
    }
  for (int i = 0; i < nb; ++i) {
    const auto& b = bs.blocks[i];
    if (std::binary_search(b.begin(), b.end(), x) && std::binary_search(b.begin(), b.end(), y)) return {x, y};
  }
  std::vector<int> prev(n + nb, -2);
  std::queue<int> q;
  q.push(x);
  prev[x] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == y) break;
    for (int w : tree[v])
      if (prev[w] == -2) {
        prev[w] = v;
        q.push(w);
      }
  }
  if (prev[y] == -2) return {};
  std::vector<int> chain;
  for (int v = y; v != -1; v = prev[v])
    if (v < n) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<std::vector<int>> simple_paths(const std::vector<std::vector<int>>& adj, int a, int b,
                                           std::size_t limit) {
  int n = static_cast<int>(adj.size());
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  q.push(b);
  dist[b] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  std::vector<std::vector<int>> out;
  if (dist[a] < 0 || limit == 0) return out;
  std::vector<int> path{a};
  std::vector<bool> used(n, false);
  used[a] = true;
  for (int len = dist[a]; len < n && out.size() < limit; ++len) {
    std::function<void(int, int)> go = [&](int v, int remaining) {
      if (out.size() >= limit) return;
      if (v == b) {
        if (remaining == 0) out.push_back(path);
        return;
      }
      for (int w : adj[v]) {
        if (used[w] || dist[w] < 0 || dist[w] > remaining - 1) continue;
        used[w] = true;
        path.push_back(w);
        go(w, remaining - 1);
        path.pop_back();
        used[w] = false;
      }
    };
    go(a, len);
  }
  return out;
}

}  // namespace multiflow
