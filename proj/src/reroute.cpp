#include "multiflow/reroute.hpp"

#include "multiflow/error.hpp"
#include "multiflow/flowlp.hpp"
#include "sink_flow.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace multiflow {

namespace detail {

std::vector<SinkPath> single_sink_flow(int n, const EdgeMap& capacity, const std::map<int, Rational>& supply_at,
                                       const std::vector<bool>& is_sink) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [e, c] : capacity) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  auto cap = [&](int a, int b) {
    auto it = capacity.find(key(a, b));
    return it == capacity.end() ? Rational(0) : it->second;
  };
  // Skew-symmetric flow: flow[{a, b}] = -flow[{b, a}].
  std::map<NodePair, Rational> flow;
  auto fl = [&](int a, int b) {
    auto it = flow.find({a, b});
    return it == flow.end() ? Rational(0) : it->second;
  };
  std::map<int, Rational> sent;
  Rational need = 0;
  for (const auto& [u, s] : supply_at) {
    if (is_sink[u]) throw Error(ErrorKind::InternalError, "flow source inside the sink set");
    need += s;
  }
  Rational total = 0;
  for (;;) {
    // BFS from the super source; -1 marks a node entered from it.
    std::vector<int> prev(n, -2);
    std::queue<int> q;
    for (const auto& [u, s] : supply_at)
      if (s - sent[u] > 0 && prev[u] == -2) {
        prev[u] = -1;
        q.push(u);
      }
    int hit = -1;
    while (!q.empty() && hit < 0) {
      int x = q.front();
      q.pop();
      for (int y : adj[x]) {
        if (prev[y] != -2 || cap(x, y) - fl(x, y) <= 0) continue;
        prev[y] = x;
        if (is_sink[y]) {
          hit = y;
          break;
        }
        q.push(y);
      }
    }
    if (hit < 0) break;
    Rational bottleneck;
    bool first = true;
    int y = hit;
    for (; prev[y] != -1; y = prev[y]) {
      Rational r = cap(prev[y], y) - fl(prev[y], y);
      if (first || r < bottleneck) bottleneck = r, first = false;
    }
    bottleneck = min_of(bottleneck, supply_at.at(y) - sent[y]);
    sent[y] += bottleneck;
    for (int z = hit; prev[z] != -1; z = prev[z]) {
      flow[{prev[z], z}] = fl(prev[z], z) + bottleneck;
      flow[{z, prev[z]}] = fl(z, prev[z]) - bottleneck;
    }
    total += bottleneck;
  }
  if (total < need)
    throw Error(ErrorKind::Violated, "single-sink flow reaches " + to_string(total) + " of " + to_string(need));

  // Decompose, cancelling any cycle met on the way.
  std::vector<SinkPath> out;
  for (const auto& [u, s] : supply_at) {
    while (sent[u] > 0) {
      std::vector<int> walk{u};
      std::map<int, std::size_t> pos{{u, 0}};
      while (!is_sink[walk.back()]) {
        int x = walk.back(), next = -1;
        for (int y : adj[x])
          if (fl(x, y) > 0) {
            next = y;
            break;
          }
        if (next < 0) throw Error(ErrorKind::InternalError, "flow decomposition stalled");
        auto seen = pos.find(next);
        if (seen != pos.end()) {
          Rational c = fl(x, next);
          for (std::size_t i = seen->second; i + 1 < walk.size(); ++i) c = min_of(c, fl(walk[i], walk[i + 1]));
          walk.push_back(next);
          for (std::size_t i = seen->second; i + 1 < walk.size(); ++i) {
            flow[{walk[i], walk[i + 1]}] -= c;
            flow[{walk[i + 1], walk[i]}] += c;
          }
          walk.resize(seen->second + 1);
          for (auto it = pos.begin(); it != pos.end();)
            it = it->second > seen->second ? pos.erase(it) : std::next(it);
          continue;
        }
        pos[next] = walk.size();
        walk.push_back(next);
      }
      Rational amt = sent[u];
      for (std::size_t i = 0; i + 1 < walk.size(); ++i) amt = min_of(amt, fl(walk[i], walk[i + 1]));
      for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        flow[{walk[i], walk[i + 1]}] -= amt;
        flow[{walk[i + 1], walk[i]}] += amt;
      }
      sent[u] -= amt;
      out.push_back({u, walk, amt});
    }
  }
  return out;
}

std::vector<Assigned> assign_paths(const std::vector<SinkPath>& paths, const std::vector<Request>& requests) {
  std::map<int, std::deque<SinkPath>> pool;
  for (const auto& p : paths) pool[p.source].push_back(p);
  std::vector<Assigned> out;
  for (const auto& rq : requests) {
    Rational left = rq.amount;
    auto& q = pool[rq.from];
    while (left > 0) {
      if (q.empty()) throw Error(ErrorKind::MissingCoverage, "connector flow runs short");
      Rational take = min_of(left, q.front().amount);
      out.push_back({rq.demand, rq.from, q.front().path, take});
      q.front().amount -= take;
      if (q.front().amount == 0) q.pop_front();
      left -= take;
    }
  }
  return out;
}

}  // namespace detail

MappedDemands map_demands(const EdgeMap& demand, const NodeMapping& f) {
  MappedDemands out;
  auto add = [](EdgeMap& m, int a, int b, const Rational& w) {
    if (a == b || w == 0) return;
    m[key(a, b)] += w;
  };
  for (const auto& [p, d] : demand) {
    add(out.core, f.at(p.first), f.at(p.second), d);
    add(out.connectors, p.first, f.at(p.first), d);
    add(out.connectors, p.second, f.at(p.second), d);
  }
  return out;
}

namespace {

std::vector<PathFlow> reversed(std::vector<PathFlow> pieces) {
  for (auto& pf : pieces) std::reverse(pf.path.begin(), pf.path.end());
  return pieces;
}

}  // namespace

Routing compose_routings(const EdgeMap& demand, const NodeMapping& f, const Routing& connectors,
                         const Routing& core) {
  Routing conn = connectors, mid = core, out;
  auto leg = [&](int u, const Rational& d) -> std::vector<PathFlow> {
    if (f.at(u) == u) return {{{u}, d}};
    return conn.draw(u, f.at(u), d);
  };
  for (const auto& [p, d] : demand) {
    auto xs = leg(p.first, d);
    auto ys = reversed(leg(p.second, d));
    int a = f.at(p.first), b = f.at(p.second);
    std::vector<PathFlow> ms = a == b ? std::vector<PathFlow>{{{a}, d}} : mid.draw(a, b, d);
    for (const auto& pf : concatenate({xs, ms, ys})) out.add(p.first, p.second, pf.path, pf.amount);
  }
  out.integral = connectors.integral && core.integral && out.amounts_integral();
  return out;
}

RerouteCheck check_rerouting_lemma(const Instance& inst, const NodeMapping& f, const Rational& gamma) {
  int n = inst.num_nodes();
  if (n > 12) throw Error(ErrorKind::TooLarge, "rerouting check is limited to 12 nodes");
  if (static_cast<int>(f.size()) != n) throw Error(ErrorKind::InvalidInput, "mapping size differs from node count");
  if (!check_cut_condition(inst).holds)
    throw Error(ErrorKind::PreconditionFailed, "demand violates the cut condition");
  auto mapped = map_demands(inst.demand, f);
  if (!mapped.connectors.empty()) {
    auto lp = min_congestion_flow(inst.with_demands(mapped.connectors));
    if (lp.congestion > gamma)
      throw Error(ErrorKind::PreconditionFailed,
                  "connector demand needs congestion " + to_string(lp.congestion) + " > " + to_string(gamma));
  }
  RerouteCheck rc;
  auto across = [](const EdgeMap& m, unsigned mask) {
    Rational s = 0;
    for (const auto& [p, w] : m)
      if (((mask >> p.first) & 1) != ((mask >> p.second) & 1)) s += w;
    return s;
  };
  // Node n-1 stays outside S; complements give the same cuts.
  for (unsigned mask = 1; n > 1 && mask < (1u << (n - 1)); ++mask) {
    ++rc.subsets;
    Rational cap = across(inst.supply, mask), core = across(mapped.core, mask);
    if (core > (gamma + 1) * cap && rc.holds) {
      rc.holds = false;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) rc.counterexample.push_back(v);
    }
    if (core > across(inst.demand, mask) + across(mapped.connectors, mask)) rc.charging_holds = false;
  }
  return rc;
}

NodeCoverReduction node_cover_reduce(const Instance& inst, const std::vector<int>& cover) {
  int n = inst.num_nodes();
  std::vector<bool> in(n, false);
  for (int v : cover) in.at(v) = true;
  for (const auto& [p, d] : inst.demand)
    if (!in[p.first] && !in[p.second])
      throw Error(ErrorKind::NotACover, "demand " + inst.pair_name(p) + " has no endpoint in the cover");
  if (!check_cut_condition(inst).holds) throw Error(ErrorKind::Violated, "cut condition fails");
  std::map<int, Rational> supply_at;
  std::vector<detail::Request> requests;
  EdgeMap core;
  for (const auto& [p, d] : inst.demand) {
    if (in[p.first] && in[p.second]) {
      core[p] += d;
      continue;
    }
    int from = in[p.first] ? p.second : p.first;
    supply_at[from] += d;
    requests.push_back({p, from, d});
  }
  auto paths = detail::single_sink_flow(n, inst.supply, supply_at, in);
  NodeCoverReduction red;
  for (const auto& a : detail::assign_paths(paths, requests)) {
    int other = a.demand.first == a.from ? a.demand.second : a.demand.first;
    int land = a.path.back();
    if (land != other) core[key(land, other)] += a.amount;
    red.connectors.push_back({a.demand, a.from, a.path, a.amount});
    auto& t = red.targets[a.from];
    auto it = std::find_if(t.begin(), t.end(), [&](const auto& x) { return x.first == land; });
    if (it == t.end())
      t.push_back({land, a.amount});
    else
      it->second += a.amount;
  }
  red.core = inst.scaled_supply(2).with_demands(core);
  return red;
}

Routing compose_cover(const Instance& inst, const NodeCoverReduction& red, const Routing& core_routing) {
  Routing mid = core_routing, out;
  std::map<NodePair, std::vector<const ConnectorPiece*>> by_pair;
  for (const auto& c : red.connectors) by_pair[c.demand].push_back(&c);
  for (const auto& [p, d] : inst.demand) {
    auto it = by_pair.find(p);
    if (it == by_pair.end()) {
      out.add_all(p.first, p.second, mid.draw(p.first, p.second, d));
      continue;
    }
    for (const auto* c : it->second) {
      int other = p.first == c->from ? p.second : p.first;
      int land = c->path.back();
      std::vector<PathFlow> rest = land == other ? std::vector<PathFlow>{{{other}, c->amount}}
                                                 : mid.draw(land, other, c->amount);
      for (const auto& pf : concatenate({{{c->path, c->amount}}, rest})) {
        auto path = pf.path;
        if (path.front() != p.first) std::reverse(path.begin(), path.end());
        out.add(p.first, p.second, path, pf.amount);
      }
    }
  }
  out.integral = core_routing.integral && out.amounts_integral();
  return out;
}

CoverRouting route_via_node_cover(const Instance& inst, const std::vector<int>& cover) {
  auto red = node_cover_reduce(inst, cover);
  CoverRouting res;
  Routing core;
  if (!red.core.demand.empty()) {
    auto lp = min_congestion_flow(red.core);
    core = lp.routing;
    res.core_congestion = lp.congestion;
  }
  res.routing = compose_cover(inst, red, core);
  res.congestion = res.routing.max_congestion(inst);
  auto rep = verify_routing(inst, res.routing, 1 + 2 * res.core_congestion);
  if (!rep.ok) throw Error(ErrorKind::InternalError, "node-cover routing failed verification: " + rep.reason);
  return res;
}

std::vector<int> min_node_cover(const Instance& inst) {
  std::set<int> ends;
  for (const auto& [p, d] : inst.demand) {
    ends.insert(p.first);
    ends.insert(p.second);
  }
  std::vector<int> pts(ends.begin(), ends.end());
  int m = static_cast<int>(pts.size());
  if (m > 20) throw Error(ErrorKind::TooLarge, "node cover search is limited to 20 demand endpoints");
  for (int size = 0; size <= m; ++size) {
    // Combinations of `size` endpoints in lexicographic order.
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::set<int> pick;
      for (int i : idx) pick.insert(pts[i]);
      bool ok = true;
      for (const auto& [p, d] : inst.demand)
        if (!pick.count(p.first) && !pick.count(p.second)) ok = false;
      if (ok) return {pick.begin(), pick.end()};
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return pts;
}

}  // namespace multiflow
