#include "multiflow/core.hpp"

#include "multiflow/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace multiflow {

bool is_eulerian(const Instance& inst) {
  if (!inst.is_integral()) throw Error(ErrorKind::NonIntegral, "parity needs integral capacities and demands");
  std::vector<mpz_class> deg(inst.num_nodes(), 0);
  for (const auto& [p, w] : inst.supply) {
    deg[p.first] += w.get_num();
    deg[p.second] += w.get_num();
  }
  for (const auto& [p, w] : inst.demand) {
    deg[p.first] += w.get_num();
    deg[p.second] += w.get_num();
  }
  for (const auto& d : deg)
    if (mpz_odd_p(d.get_mpz_t())) return false;
  return true;
}

Rational push_unit(const Instance& inst, int x, int y) {
  Rational d = inst.demand_of(x, y);
  return inst.is_integral() ? min_of(Rational(1), d) : d;
}

PushResult push_demand(const Instance& inst, int x, int y, int w) {
  int n = inst.num_nodes();
  if (x < 0 || y < 0 || w < 0 || x >= n || y >= n || w >= n) throw Error(ErrorKind::InvalidInput, "node out of range");
  if (w == x || w == y) throw Error(ErrorKind::InvalidInput, "push target coincides with a demand endpoint");
  if (inst.demand_of(x, y) <= 0)
    throw Error(ErrorKind::NoSuchDemand, "no demand between " + inst.name(x) + " and " + inst.name(y));
  Rational unit = push_unit(inst, x, y);
  PushResult res;
  res.after = inst;
  res.after.set_demand(x, y, inst.demand_of(x, y) - unit);
  res.after.add_demand(x, w, unit);
  res.after.add_demand(w, y, unit);
  auto rep = check_cut_condition(res.after);
  res.ok = rep.holds;
  if (!res.ok) res.witness = rep.worst;
  return res;
}

std::vector<NodePair> tjoin(int n, const std::vector<NodePair>& edges, const std::vector<int>& T) {
  if (T.size() % 2 != 0) throw Error(ErrorKind::OddSetSize, "T-join needs an even number of terminals");
  std::vector<std::vector<int>> adj(n);
  std::set<NodePair> uniq;
  for (auto e : edges) {
    e = key(e.first, e.second);
    if (e.first == e.second || !uniq.insert(e).second) continue;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> odd(n, 0);
  for (int t : T) odd.at(t) ^= 1;
  std::vector<int> parent(n, -2), order;
  std::vector<NodePair> out;
  for (int root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::size_t first = order.size();
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w : adj[v])
        if (parent[w] == -2) {
          parent[w] = v;
          q.push(w);
        }
    }
    int count = 0;
    for (std::size_t i = first; i < order.size(); ++i) count += odd[order[i]];
    if (count % 2 != 0) throw Error(ErrorKind::Disconnected, "a component holds an odd number of terminals");
  }
  // Reverse BFS order accumulates subtree parity.
  std::vector<int> sub = odd;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (parent[v] < 0) continue;
    if (sub[v]) out.push_back(key(v, parent[v]));
    sub[parent[v]] ^= sub[v];
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerifyReport verify_routing(const Instance& inst, const Routing& routing, const Rational& alpha) {
  VerifyReport rep;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.reason = why;
    return rep;
  };
  for (const auto& [p, list] : routing.flows) {
    if (inst.demand_of(p.first, p.second) == 0 && !list.empty())
      return fail("flow for non-demand pair " + inst.pair_name(p));
    for (const auto& pf : list) {
      if (pf.amount <= 0) return fail("non-positive amount for " + inst.pair_name(p));
      if (pf.path.empty() || pf.path.front() != p.first || pf.path.back() != p.second)
        return fail("path endpoints do not match demand " + inst.pair_name(p));
      std::set<int> seen(pf.path.begin(), pf.path.end());
      if (seen.size() != pf.path.size()) return fail("non-simple path for " + inst.pair_name(p));
      for (std::size_t i = 0; i + 1 < pf.path.size(); ++i)
        if (inst.capacity(pf.path[i], pf.path[i + 1]) == 0)
          return fail("path uses missing supply edge " + inst.pair_name(key(pf.path[i], pf.path[i + 1])));
    }
  }
  for (const auto& [p, d] : inst.demand) {
    Rational got = routing.total(p.first, p.second);
    if (got < d) return fail("demand shortfall on " + inst.pair_name(p) + ": " + to_string(got) + " < " + to_string(d));
    if (got > d) return fail("demand excess on " + inst.pair_name(p) + ": " + to_string(got) + " > " + to_string(d));
  }
  for (const auto& [e, load] : routing.loads()) {
    Rational c = inst.capacity(e.first, e.second);
    Rational q = load / c;
    if (q > rep.max_congestion) rep.max_congestion = q;
    if (load > alpha * c)
      return fail("edge load on " + inst.pair_name(e) + " is " + to_string(load) + " > " + to_string(alpha) + " * " +
                  to_string(c));
  }
  if (routing.integral && !routing.amounts_integral()) return fail("routing claims integrality but has fractional amounts");
  rep.ok = true;
  return rep;
}

Instance restrict_to(const Instance& inst, const std::vector<int>& subset) {
  std::vector<bool> in(inst.num_nodes(), false);
  for (int v : subset) in.at(v) = true;
  Instance out;
  out.nodes = inst.nodes;
  for (const auto& [p, w] : inst.supply)
    if (in[p.first] && in[p.second]) out.supply[p] = w;
  for (const auto& [p, w] : inst.demand)
    if (in[p.first] && in[p.second]) out.demand[p] = w;
  return out;
}

namespace {

struct SearchState {
  const Instance& inst;
  const SearchOptions& opt;
  std::vector<NodePair> edges;
  std::vector<long> residual;
  struct Pair {
    int a, b;
    long units;
    std::vector<std::vector<int>> paths;      // node sequences
    std::vector<std::vector<int>> edge_ids;   // matching edge indices
  };
  std::vector<Pair> pairs;
  std::vector<int> unit_pair;   // pair index per unit
  std::vector<int> choice;      // path index per unit
  std::vector<long> remaining;  // units left per pair
  std::uint64_t visited = 0;
  bool prune_cuts = false;

  bool fits(const std::vector<int>& ids) const {
    for (int e : ids)
      if (residual[e] < 1) return false;
    return true;
  }

  bool viable() const {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (remaining[p] == 0) continue;
      bool any = false;
      for (const auto& ids : pairs[p].edge_ids)
        if (fits(ids)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    if (!prune_cuts) return true;
    Instance res;
    res.nodes = inst.nodes;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (residual[e] > 0) res.supply[edges[e]] = Rational(residual[e]);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (remaining[p] > 0) res.demand[key(pairs[p].a, pairs[p].b)] = Rational(remaining[p]);
    return check_cut_condition(res).holds;
  }

  bool go(std::size_t u) {
    if (u == unit_pair.size()) return true;
    if (++visited > opt.node_budget)
      throw Error(ErrorKind::TooLarge, "integral search exceeded its node budget");
    int p = unit_pair[u];
    std::size_t start = (u > 0 && unit_pair[u - 1] == p) ? static_cast<std::size_t>(choice[u - 1]) : 0;
    for (std::size_t k = start; k < pairs[p].paths.size(); ++k) {
      const auto& ids = pairs[p].edge_ids[k];
      if (!fits(ids)) continue;
      for (int e : ids) --residual[e];
      --remaining[p];
      choice[u] = static_cast<int>(k);
      if (viable() && go(u + 1)) return true;
      ++remaining[p];
      for (int e : ids) ++residual[e];
    }
    return false;
  }
};

}  // namespace

std::optional<Routing> exhaustive_integral_route(const Instance& inst, const Rational& alpha, const SearchOptions& opt) {
  for (const auto& [p, d] : inst.demand)
    if (!is_integer(d)) throw Error(ErrorKind::NonIntegral, "integral search needs integral demands");
  SearchState st{inst, opt, {}, {}, {}, {}, {}, {}, 0, false};
  std::map<NodePair, int> edge_index;
  for (const auto& [p, c] : inst.supply) {
    edge_index[p] = static_cast<int>(st.edges.size());
    st.edges.push_back(p);
    st.residual.push_back(floor_of(alpha * c).get_num().get_si());
  }
  auto adj = inst.supply_adjacency();
  for (const auto& [p, d] : inst.demand) {
    SearchState::Pair pr{p.first, p.second, d.get_num().get_si(), {}, {}};
    pr.paths = simple_paths(adj, p.first, p.second, opt.paths_per_pair);
    if (pr.paths.empty()) return std::nullopt;
    for (const auto& path : pr.paths) {
      std::vector<int> ids;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) ids.push_back(edge_index.at(key(path[i], path[i + 1])));
      pr.edge_ids.push_back(ids);
    }
    st.pairs.push_back(std::move(pr));
  }
  // Pairs with fewer alternatives first, then larger demands.
  std::stable_sort(st.pairs.begin(), st.pairs.end(), [](const auto& x, const auto& y) {
    if (x.paths.size() != y.paths.size()) return x.paths.size() < y.paths.size();
    return x.units > y.units;
  });
  for (std::size_t p = 0; p < st.pairs.size(); ++p) {
    st.remaining.push_back(st.pairs[p].units);
    for (long k = 0; k < st.pairs[p].units; ++k) st.unit_pair.push_back(static_cast<int>(p));
  }
  st.choice.assign(st.unit_pair.size(), 0);
  st.prune_cuts = static_cast<int>(inst.active_nodes().size()) <= opt.cut_prune_nodes;
  if (!st.viable() || !st.go(0)) return std::nullopt;
  Routing r;
  r.integral = true;
  for (std::size_t u = 0; u < st.unit_pair.size(); ++u) {
    const auto& pr = st.pairs[st.unit_pair[u]];
    r.add(pr.a, pr.b, pr.paths[st.choice[u]], 1);
  }
  return r;
}

std::optional<int> integral_optimum(const Instance& inst, int max_alpha, const SearchOptions& opt) {
  for (int a = 1; a <= max_alpha; ++a)
    if (exhaustive_integral_route(inst, a, opt)) return a;
  return std::nullopt;
}

namespace {

bool parallel_pass(Instance& cur, ReductionTrace& trace) {
  bool changed = false;
  for (const auto& [p, d] : EdgeMap(cur.demand)) {
    Rational c = cur.capacity(p.first, p.second);
    if (c == 0) continue;
    Rational a = min_of(c, d);
    cur.set_supply(p.first, p.second, c - a);
    cur.set_demand(p.first, p.second, d - a);
    trace.add({StepKind::ParallelReduce, p.first, p.second, -1, a, {}});
    changed = true;
  }
  return changed;
}

bool one_cut_pass(Instance& cur, ReductionTrace& trace) {
  int n = cur.num_nodes();
  auto bs = biconnected_blocks(n, cur.supply_adjacency());
  bool changed = false;
  for (const auto& [p, d] : EdgeMap(cur.demand)) {
    auto chain = block_chain(bs, n, p.first, p.second);
    if (chain.empty())
      throw Error(ErrorKind::Violated, "demand " + cur.pair_name(p) + " joins disconnected parts of the supply graph");
    if (chain.size() <= 2) continue;
    cur.set_demand(p.first, p.second, 0);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) cur.add_demand(chain[i], chain[i + 1], d);
    trace.add({StepKind::OneCut, p.first, p.second, -1, d, chain});
    changed = true;
  }
  return changed;
}

bool slack_pass(Instance& cur, ReductionTrace& trace, const ReduceOptions& opt) {
  std::vector<NodePair> pairs;
  if (opt.supply_slack)
    for (const auto& [p, c] : cur.supply) pairs.push_back(p);
  if (opt.demand_slack)
    for (const auto& [p, d] : cur.demand) pairs.push_back(p);
  if (pairs.empty()) return false;
  EdgeMap mins;
  try {
    mins = min_surplus_across(cur, pairs);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TooLarge) return false;
    throw;
  }
  bool integral = cur.is_integral();
  for (const auto& [p, m] : mins)
    if (m < 0) throw Error(ErrorKind::Violated, "cut across " + cur.pair_name(p) + " has surplus " + to_string(m));
  if (opt.supply_slack) {
    for (const auto& [p, c] : EdgeMap(cur.supply)) {
      auto it = mins.find(p);
      if (it == mins.end()) continue;
      Rational k = min_of(c, integral ? floor_of(it->second / 2) : it->second / 2);
      if (k <= 0) continue;
      cur.set_supply(p.first, p.second, c - k);
      cur.add_demand(p.first, p.second, k);
      trace.add({StepKind::SupplySlack, p.first, p.second, -1, k, {}});
      return true;
    }
  }
  if (opt.demand_slack) {
    for (const auto& [p, d] : EdgeMap(cur.demand)) {
      auto it = mins.find(p);
      if (it == mins.end()) continue;
      Rational k = integral ? 2 * floor_of(it->second / 2) : it->second;
      if (k <= 0) continue;
      cur.add_demand(p.first, p.second, k);
      trace.add({StepKind::DemandSlack, p.first, p.second, -1, k, {}});
      return true;
    }
  }
  return false;
}

bool contract_pass(Instance& cur, ReductionTrace& trace) {
  auto adj = cur.supply_adjacency();
  auto deg = cur.demand_degree();
  for (int w = 0; w < cur.num_nodes(); ++w) {
    if (adj[w].size() != 2 || deg[w] != 0) continue;
    int x = adj[w][0], y = adj[w][1];
    Rational c = min_of(cur.capacity(w, x), cur.capacity(w, y));
    cur.set_supply(w, x, 0);
    cur.set_supply(w, y, 0);
    cur.add_supply(x, y, c);
    trace.add({StepKind::Contract, x, y, w, c, {}});
    return true;
  }
  return false;
}

}  // namespace

ReduceResult reduce_basic(const Instance& inst, const ReduceOptions& opt) {
  ReduceResult res;
  res.reduced = inst;
  Instance& cur = res.reduced;
  if (static_cast<int>(cur.active_nodes().size()) <= node_cap()) {
    auto rep = check_cut_condition(cur);
    if (!rep.holds)
      throw Error(ErrorKind::Violated, "cut condition fails with surplus " + to_string(rep.worst.surplus));
  }
  while (true) {
    bool changed = parallel_pass(cur, res.trace);
    changed = one_cut_pass(cur, res.trace) || changed;
    if (changed) continue;
    if ((opt.supply_slack || opt.demand_slack) && slack_pass(cur, res.trace, opt)) continue;
    if (opt.contract && contract_pass(cur, res.trace)) continue;
    break;
  }
  auto bs = biconnected_blocks(cur.num_nodes(), cur.supply_adjacency());
  for (const auto& b : bs.blocks) {
    bool has = false;
    for (const auto& [p, d] : cur.demand)
      if (std::binary_search(b.begin(), b.end(), p.first) && std::binary_search(b.begin(), b.end(), p.second)) {
        has = true;
        break;
      }
    if (has) res.blocks.push_back(b);
  }
  return res;
}

}  // namespace multiflow
