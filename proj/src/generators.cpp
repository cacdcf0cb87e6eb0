#include "multiflow/generators.hpp"

#include "multiflow/compliance.hpp"
#include "multiflow/error.hpp"
#include "multiflow/lbgen.hpp"
#include "multiflow/spgraph.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace multiflow {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

std::vector<int> random_path(const std::vector<std::vector<int>>& adj, int a, int b, Rng& rng) {
  std::vector<int> path{a};
  std::vector<bool> used(adj.size(), false);
  used[a] = true;
  std::function<bool(int)> go = [&](int v) {
    if (v == b) return true;
    auto nb = adj[v];
    std::shuffle(nb.begin(), nb.end(), rng);
    for (int w : nb) {
      if (used[w]) continue;
      used[w] = true;
      path.push_back(w);
      if (go(w)) return true;
      path.pop_back();
    }
    return false;
  };
  return go(a) ? path : std::vector<int>{};
}

// Supply skeleton (edge list over named nodes) to which routed units add
// capacity.
struct Builder {
  Instance inst;
  std::vector<NodePair> edges;
  Routing witness;

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(inst.num_nodes());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& l : adj) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return adj;
  }

  void route(int a, int b, std::vector<int> path) {
    if (a > b) {
      std::swap(a, b);
      std::reverse(path.begin(), path.end());
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) inst.add_supply(path[i], path[i + 1], 1);
    inst.add_demand(a, b, 1);
    witness.add(a, b, path, 1);
  }

  // Base capacity: even values keep the parity of routed cycles; `keep`
  // forces every skeleton edge to stay present.
  void base(Rng& rng, bool eulerian, bool keep) {
    for (auto [a, b] : edges) {
      int c = eulerian ? 2 * pick(rng, 2) : pick(rng, 2);
      if (keep && c == 0 && inst.capacity(a, b) == 0) c = eulerian ? 2 : 1;
      if (c > 0) inst.add_supply(a, b, c);
    }
  }
};

Builder sp_skeleton(int target, Rng& rng) {
  Builder b;
  target = std::max(target, 3);
  for (int i = 0; i < target; ++i) b.inst.add_node("n" + std::to_string(i));
  std::vector<NodePair> edges{{0, 1}};
  int n = 2;
  auto grow = [&](bool series) {
    auto e = edges[pick(rng, static_cast<int>(edges.size()))];
    int w = n++;
    if (series) edges.erase(std::find(edges.begin(), edges.end(), e));
    edges.push_back(key(e.first, w));
    edges.push_back(key(w, e.second));
  };
  grow(false);
  while (n < target) grow(pick(rng, 2) == 0);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  b.edges = edges;
  return b;
}

Witnessed sp_family(Rng& rng, const GenOptions& opt, int strictness) {
  // strictness: 0 any pair, 1 compliant pairs, 2 fully compliant pairs.
  Builder b = sp_skeleton(opt.nodes, rng);
  int n = b.inst.num_nodes();
  auto adj = b.adjacency();
  std::vector<NodePair> pool;
  if (strictness == 0) {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) pool.push_back({x, y});
  } else {
    Instance shape = b.inst;
    for (auto [x, y] : b.edges) shape.add_supply(x, y, 1);
    auto tree = recognize_sp(shape).tree;
    std::vector<NodePair> partial;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        auto label = classify_edge(shape, tree, x, y);
        if (label == Compliance::FullyCompliant) pool.push_back({x, y});
        if (label == Compliance::Compliant && strictness == 1) partial.push_back({x, y});
      }
    // Compliant-only pairs are drawn as often as all fully compliant ones.
    if (!partial.empty()) {
      std::size_t want = std::max(pool.size(), partial.size());
      for (std::size_t i = 0; i < want; ++i) pool.push_back(partial[i % partial.size()]);
    }
  }
  for (int u = 0; u < opt.units; ++u) {
    auto [x, y] = pool[pick(rng, static_cast<int>(pool.size()))];
    b.route(x, y, random_path(adj, x, y, rng));
  }
  b.base(rng, opt.eulerian, strictness > 0);
  return {b.inst, b.witness};
}

Witnessed ring_family(Rng& rng, const GenOptions& opt) {
  Builder b;
  int n = std::max(opt.nodes, 3);
  for (int i = 0; i < n; ++i) {
    b.inst.add_node("r" + std::to_string(i));
    b.edges.push_back(key(i, (i + 1) % n));
  }
  for (int u = 0; u < opt.units; ++u) {
    int x = pick(rng, n), y = pick(rng, n - 1);
    if (y >= x) ++y;
    std::vector<int> path{x};
    int step = pick(rng, 2) ? 1 : n - 1;
    for (int v = x; v != y;) path.push_back(v = (v + step) % n);
    b.route(x, y, path);
  }
  b.base(rng, opt.eulerian, true);
  return {b.inst, b.witness};
}

Witnessed k2m_family(Rng& rng, const GenOptions& opt) {
  Builder b;
  int m = std::max(opt.spokes, 1);
  b.inst.add_node("s");
  b.inst.add_node("t");
  for (int i = 1; i <= m; ++i) b.inst.add_node("v" + std::to_string(i));
  for (int i = 0; i < m; ++i) {
    b.edges.push_back({0, 2 + i});
    b.edges.push_back({1, 2 + i});
  }
  bool hub_edge = pick(rng, 2) == 0;
  if (hub_edge) b.edges.push_back({0, 1});
  // Random bipartition of the spokes; both sides nonempty when m >= 2.
  std::vector<int> side(m);
  for (int i = 0; i < m; ++i) side[i] = i == 0 ? 0 : i == 1 ? 1 : pick(rng, 2);
  for (int u = 0; u < opt.units; ++u) {
    int kind = pick(rng, 4);
    if (kind == 0 || m < 2) {
      // Hub demand through a spoke or the hub edge.
      int i = pick(rng, m + (hub_edge ? 1 : 0));
      b.route(0, 1, i == m ? std::vector<int>{0, 1} : std::vector<int>{0, 2 + i, 1});
    } else if (kind == 1) {
      int i = pick(rng, m), h = pick(rng, 2);
      b.route(h, 2 + i, {h, 2 + i});
    } else {
      int i = pick(rng, m), j = pick(rng, m);
      if (side[i] == side[j]) continue;
      int h = pick(rng, 2);
      b.route(2 + i, 2 + j, {2 + i, h, 2 + j});
    }
  }
  // Keep the K_{2m} shape: every spoke edge present.
  for (int i = 0; i < m; ++i)
    if (b.inst.capacity(0, 2 + i) == 0 || b.inst.capacity(1, 2 + i) == 0) b.route(0, 1, {0, 2 + i, 1});
  if (!opt.eulerian)
    for (auto [x, y] : b.edges)
      if (pick(rng, 2) && b.inst.capacity(x, y) > 0) b.inst.add_supply(x, y, 1);
  return {b.inst, b.witness};
}

Witnessed planar_family(Rng& rng, const GenOptions& opt, int mode) {
  // mode 0: demands touch the outer face; 1: outer face or the central square;
  // 2: demands touch the two outer layers.
  Builder b;
  Instance grid = grid_instance(opt.rows, opt.cols);
  b.inst.nodes = grid.nodes;
  b.inst.faces = grid.faces;
  for (const auto& [p, c] : grid.supply) b.edges.push_back(p);
  int n = b.inst.num_nodes(), R = opt.rows, C = opt.cols;
  auto layer = [&](int v) {
    int r = v / C, c = v % C;
    return std::min(std::min(r, R - 1 - r), std::min(c, C - 1 - c)) + 1;
  };
  std::set<int> face2;
  if (mode == 1) {
    // The inner face nearest the centre.
    int r = (R - 2) / 2, c = (C - 2) / 2;
    face2 = {r * C + c, r * C + c + 1, (r + 1) * C + c, (r + 1) * C + c + 1};
  }
  auto covered = [&](int v) {
    if (mode == 2) return layer(v) <= 2;
    return layer(v) == 1 || face2.count(v) > 0;
  };
  auto adj = b.adjacency();
  for (int u = 0; u < opt.units;) {
    int x = pick(rng, n), y = pick(rng, n);
    if (x == y || (!covered(x) && !covered(y))) continue;
    b.route(x, y, random_path(adj, x, y, rng));
    ++u;
  }
  b.base(rng, opt.eulerian, true);
  return {b.inst, b.witness};
}

}  // namespace

Instance grid_instance(int rows, int cols) {
  if (rows < 2 || cols < 2) throw Error(ErrorKind::InvalidInput, "grid needs at least 2 rows and 2 columns");
  Instance inst;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) inst.add_node("g" + std::to_string(r) + "_" + std::to_string(c));
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) inst.add_supply(id(r, c), id(r, c + 1), 1);
      if (r + 1 < rows) inst.add_supply(id(r, c), id(r + 1, c), 1);
    }
  std::vector<int> outer;
  for (int c = 0; c < cols; ++c) outer.push_back(id(0, c));
  for (int r = 1; r < rows; ++r) outer.push_back(id(r, cols - 1));
  for (int c = cols - 2; c >= 0; --c) outer.push_back(id(rows - 1, c));
  for (int r = rows - 2; r >= 1; --r) outer.push_back(id(r, 0));
  inst.faces.push_back(outer);
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) inst.faces.push_back({id(r, c), id(r + 1, c), id(r + 1, c + 1), id(r, c + 1)});
  return inst;
}

const std::vector<std::string>& witnessed_families() {
  static const std::vector<std::string> f{"sp",           "sp-compliant", "sp-fully-compliant",
                                          "ring",         "k2m-bipartite", "planar-outer",
                                          "planar-2face", "planar-kshell", "lb-family"};
  return f;
}

Witnessed gen_witnessed(std::uint64_t seed, const std::string& family, const GenOptions& opt) {
  Rng rng(seed);
  if (family == "sp") return sp_family(rng, opt, 0);
  if (family == "sp-compliant") return sp_family(rng, opt, 1);
  if (family == "sp-fully-compliant") return sp_family(rng, opt, 2);
  if (family == "ring") return ring_family(rng, opt);
  if (family == "k2m-bipartite") return k2m_family(rng, opt);
  if (family == "planar-outer") return planar_family(rng, opt, 0);
  if (family == "planar-2face") return planar_family(rng, opt, 1);
  if (family == "planar-kshell") return planar_family(rng, opt, 2);
  if (family == "lb-family") {
    // Not routable at congestion 1, so no witness comes with it.
    return {generate_lb(4, 1 + static_cast<int>(seed % 2)).instance, {}};
  }
  throw Error(ErrorKind::InvalidInput, "unknown family " + family);
}

}  // namespace multiflow
