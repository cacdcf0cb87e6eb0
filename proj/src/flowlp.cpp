#include "multiflow/flowlp.hpp"

#include "multiflow/error.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace multiflow {

namespace {

struct Arc {
  int to;
  int edge;  // index into the supply edge list
};

std::vector<std::vector<Arc>> arcs_of(const Instance& inst, const std::vector<NodePair>& edges) {
  std::vector<std::vector<Arc>> g(inst.num_nodes());
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    g[edges[i].first].push_back({edges[i].second, i});
    g[edges[i].second].push_back({edges[i].first, i});
  }
  for (auto& l : g) std::sort(l.begin(), l.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  return g;
}

struct ShortestTree {
  std::vector<Rational> dist;
  std::vector<bool> reached;
  std::vector<int> pred_node, pred_edge;
};

// Dijkstra with nonnegative exact lengths; ties keep the first predecessor.
ShortestTree dijkstra(const std::vector<std::vector<Arc>>& g, const std::vector<Rational>& len, int src) {
  int n = static_cast<int>(g.size());
  ShortestTree st{std::vector<Rational>(n, 0), std::vector<bool>(n, false), std::vector<int>(n, -1),
                  std::vector<int>(n, -1)};
  std::vector<bool> done(n, false);
  auto cmp = [&](int a, int b) { return st.dist[a] != st.dist[b] ? st.dist[a] < st.dist[b] : a < b; };
  std::set<int, decltype(cmp)> frontier(cmp);
  st.reached[src] = true;
  frontier.insert(src);
  while (!frontier.empty()) {
    int best = *frontier.begin();
    frontier.erase(frontier.begin());
    done[best] = true;
    for (const auto& a : g[best]) {
      if (done[a.to]) continue;
      Rational nd = st.dist[best] + len[a.edge];
      if (!st.reached[a.to] || nd < st.dist[a.to]) {
        if (st.reached[a.to]) frontier.erase(a.to);
        st.reached[a.to] = true;
        st.dist[a.to] = nd;
        st.pred_node[a.to] = best;
        st.pred_edge[a.to] = a.edge;
        frontier.insert(a.to);
      }
    }
  }
  return st;
}

struct Column {
  Rational cost;
  std::vector<std::pair<int, Rational>> entries;  // (row, value)
  int demand = -1;                                // path columns only
  std::vector<int> path;
};

}  // namespace

FractionalFlow min_congestion_flow(const Instance& inst, int pivot_limit) {
  FractionalFlow out;
  std::vector<NodePair> dem, edges;
  std::vector<Rational> dval, cap;
  for (const auto& [p, d] : inst.demand) {
    dem.push_back(p);
    dval.push_back(d);
  }
  for (const auto& [p, c] : inst.supply) {
    edges.push_back(p);
    cap.push_back(c);
  }
  if (dem.empty()) return out;
  int F = static_cast<int>(dem.size()), E = static_cast<int>(edges.size()), m = F + E;
  auto g = arcs_of(inst, edges);

  // Rows: demand rows 0..F-1 (sum of path flow = demand), then edge rows
  // F..F+E-1 (load - congestion * capacity + slack = 0).
  std::vector<Column> cols;
  cols.push_back({1, {}, -1, {}});  // congestion
  for (int e = 0; e < E; ++e) cols[0].entries.push_back({F + e, -cap[e]});
  for (int e = 0; e < E; ++e) cols.push_back({0, {{F + e, 1}}, -1, {}});
  auto path_column = [&](int f, const ShortestTree& st) {
    Column c{0, {{f, 1}}, f, {}};
    int v = dem[f].second;
    std::vector<int> es;
    while (v != dem[f].first) {
      c.path.push_back(v);
      es.push_back(st.pred_edge[v]);
      v = st.pred_node[v];
    }
    c.path.push_back(v);
    std::reverse(c.path.begin(), c.path.end());
    std::sort(es.begin(), es.end());
    for (int e : es) c.entries.push_back({F + e, 1});
    return c;
  };

  // Starting basis: a hop-shortest path per demand, the congestion variable
  // in place of the slack of the most loaded edge, and the other slacks.
  std::vector<Rational> unit(E, 1), load(E, 0);
  std::vector<int> basis(m, -1);
  for (int f = 0; f < F; ++f) {
    auto st = dijkstra(g, unit, dem[f].first);
    if (!st.reached[dem[f].second]) throw Error(ErrorKind::NoPath, "demand " + inst.pair_name(dem[f]));
    cols.push_back(path_column(f, st));
    basis[f] = static_cast<int>(cols.size()) - 1;
    for (auto [row, v] : cols.back().entries)
      if (row >= F) load[row - F] += dval[f];
  }
  int tight = 0;
  for (int e = 1; e < E; ++e)
    if (load[e] * cap[tight] > load[tight] * cap[e]) tight = e;
  for (int e = 0; e < E; ++e) basis[F + e] = e == tight ? 0 : 1 + e;

  // Explicit inverse of the starting basis by Gauss-Jordan.
  std::vector<std::vector<Rational>> B(m, std::vector<Rational>(m, 0)), inv(m, std::vector<Rational>(m, 0));
  for (int j = 0; j < m; ++j)
    for (auto [row, v] : cols[basis[j]].entries) B[row][j] = v;
  for (int i = 0; i < m; ++i) inv[i][i] = 1;
  for (int c = 0; c < m; ++c) {
    int p = c;
    while (p < m && B[p][c] == 0) ++p;
    if (p == m) throw Error(ErrorKind::InternalError, "singular starting basis");
    std::swap(B[p], B[c]);
    std::swap(inv[p], inv[c]);
    Rational piv = B[c][c];
    for (int j = 0; j < m; ++j) {
      B[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (int i = 0; i < m; ++i) {
      if (i == c || B[i][c] == 0) continue;
      Rational f = B[i][c];
      for (int j = 0; j < m; ++j) {
        B[i][j] -= f * B[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  // inv now maps row space to basis positions: x_B = inv * b.
  std::vector<Rational> b(m, 0), x(m, 0);
  for (int f = 0; f < F; ++f) b[f] = dval[f];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < F; ++j) x[i] += inv[i][j] * b[j];

  auto duals = [&]() {
    std::vector<Rational> y(m, 0);
    for (int i = 0; i < m; ++i) {
      const Rational& cb = cols[basis[i]].cost;
      if (cb == 0) continue;
      for (int j = 0; j < m; ++j) y[j] += cb * inv[i][j];
    }
    return y;
  };
  auto reduced = [&](const Column& c, const std::vector<Rational>& y) {
    Rational r = c.cost;
    for (auto [row, v] : c.entries) r -= y[row] * v;
    return r;
  };

  for (;;) {
    auto y = duals();
    // Bland: lowest-index improving column, then generated columns.
    int enter = -1;
    for (int j = 0; j < static_cast<int>(cols.size()) && enter < 0; ++j)
      if (reduced(cols[j], y) < 0) enter = j;
    if (enter < 0) {
      std::vector<Rational> len(E);
      for (int e = 0; e < E; ++e) len[e] = -y[F + e];
      for (int f = 0; f < F && enter < 0; ++f) {
        auto st = dijkstra(g, len, dem[f].first);
        if (st.dist[dem[f].second] - y[f] < 0) {
          cols.push_back(path_column(f, st));
          enter = static_cast<int>(cols.size()) - 1;
        }
      }
    }
    if (enter < 0) {
      for (int e = 0; e < E; ++e)
        if (y[F + e] != 0) out.lengths[edges[e]] = -y[F + e];
      break;
    }
    if (++out.pivots > pivot_limit) throw Error(ErrorKind::TooLarge, "simplex pivot limit exceeded");
    std::vector<Rational> d(m, 0);
    for (int i = 0; i < m; ++i)
      for (auto [row, v] : cols[enter].entries) d[i] += inv[i][row] * v;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (d[i] <= 0) continue;
      Rational ratio = x[i] / d[i];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw Error(ErrorKind::InternalError, "unbounded congestion program");
    Rational piv = d[leave];
    for (int j = 0; j < m; ++j) inv[leave][j] /= piv;
    x[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || d[i] == 0) continue;
      Rational f = d[i];
      for (int j = 0; j < m; ++j) inv[i][j] -= f * inv[leave][j];
      x[i] -= f * x[leave];
    }
    basis[leave] = enter;
  }

  for (int i = 0; i < m; ++i) {
    const Column& c = cols[basis[i]];
    if (basis[i] == 0) out.congestion = x[i];
    if (c.demand >= 0 && x[i] > 0) out.routing.add(dem[c.demand].first, dem[c.demand].second, c.path, x[i]);
  }
  out.columns = static_cast<int>(cols.size());
  return out;
}

EdgeMap demand_distances(const Instance& inst, const EdgeMap& lengths) {
  std::vector<NodePair> edges;
  std::vector<Rational> len;
  for (const auto& [p, c] : inst.supply) {
    edges.push_back(p);
    auto it = lengths.find(p);
    Rational l = it == lengths.end() ? Rational(0) : it->second;
    if (l < 0) throw Error(ErrorKind::InvalidInput, "negative length on " + inst.pair_name(p));
    len.push_back(l);
  }
  auto g = arcs_of(inst, edges);
  EdgeMap out;
  int src = -1;
  ShortestTree st;
  for (const auto& [p, d] : inst.demand) {
    if (p.first != src) {
      src = p.first;
      st = dijkstra(g, len, src);
    }
    if (!st.reached[p.second]) throw Error(ErrorKind::NoPath, "demand " + inst.pair_name(p));
    out[p] = st.dist[p.second];
  }
  return out;
}

Rational dual_bound(const Instance& inst, const EdgeMap& lengths) {
  Rational num = 0, den = 0;
  for (const auto& [p, c] : inst.supply) {
    auto it = lengths.find(p);
    if (it != lengths.end()) den += c * it->second;
  }
  if (inst.demand.empty()) return 0;
  if (den == 0) throw Error(ErrorKind::DegenerateLengths, "lengths vanish on every capacitated edge");
  for (const auto& [p, dist] : demand_distances(inst, lengths)) num += inst.demand.at(p) * dist;
  Rational r = num / den;
  r.canonicalize();
  return r;
}

Rational std_lower_bound(const Instance& inst) {
  if (inst.demand.empty()) return 0;
  Rational den = inst.total_capacity(), num = 0;
  if (den == 0) throw Error(ErrorKind::DegenerateLengths, "no capacitated edge");
  auto adj = inst.supply_adjacency();
  int src = -1;
  std::vector<int> hops;
  for (const auto& [p, d] : inst.demand) {
    if (p.first != src) {
      src = p.first;
      hops.assign(inst.num_nodes(), -1);
      hops[src] = 0;
      std::queue<int> q;
      q.push(src);
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
          if (hops[w] < 0) {
            hops[w] = hops[v] + 1;
            q.push(w);
          }
      }
    }
    if (hops[p.second] < 0) throw Error(ErrorKind::NoPath, "demand " + inst.pair_name(p));
    num += d * hops[p.second];
  }
  Rational r = num / den;
  r.canonicalize();
  return r;
}

Rational flow_through_node(const Routing& r, const NodePair& demand, int node) {
  Rational total = 0;
  auto it = r.flows.find(key(demand.first, demand.second));
  if (it == r.flows.end()) return total;
  for (const auto& pf : it->second)
    if (std::find(pf.path.begin(), pf.path.end(), node) != pf.path.end()) total += pf.amount;
  return total;
}

}  // namespace multiflow
