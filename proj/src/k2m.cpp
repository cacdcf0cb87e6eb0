#include "multiflow/k2m.hpp"

#include "multiflow/error.hpp"

#include <algorithm>
#include <set>

namespace multiflow {

const char* role_name(SpokeRole r) {
  switch (r) {
    case SpokeRole::Keep: return "keep";
    case SpokeRole::MergeS: return "merge-s";
    case SpokeRole::MergeT: return "merge-t";
    case SpokeRole::Delete: return "delete";
  }
  return "?";
}

K2mShape k2m_shape(const Instance& inst) {
  auto adj = inst.supply_adjacency();
  std::vector<int> act;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!adj[v].empty()) act.push_back(v);
  for (std::size_t i = 0; i < act.size(); ++i)
    for (std::size_t j = i + 1; j < act.size(); ++j) {
      int s = act[i], t = act[j];
      K2mShape shape{s, t, {}};
      bool ok = true;
      for (int v : act) {
        if (v == s || v == t) continue;
        auto nb = adj[v];
        std::sort(nb.begin(), nb.end());
        if (nb != std::vector<int>{s, t}) {
          ok = false;
          break;
        }
        shape.spokes.push_back(v);
      }
      if (!ok || shape.spokes.empty()) continue;
      for (const auto& [p, d] : inst.demand)
        if (adj[p.first].empty() || adj[p.second].empty()) ok = false;
      if (ok) return shape;
    }
  throw Error(ErrorKind::NotK2mShape, "no hub pair adjacent to every other node");
}

namespace {

Rational spoke_demand(const Instance& inst, int v) {
  Rational d = 0;
  for (const auto& [p, w] : inst.demand)
    if (p.first == v || p.second == v) d += w;
  return d;
}

// Parallel reductions and spoke tightening to a fixpoint.
void normalize_into(Instance& cur, const K2mShape& shape, ReductionTrace& trace) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [p, d] : EdgeMap(cur.demand)) {
      Rational c = cur.capacity(p.first, p.second);
      if (c == 0) continue;
      Rational amt = min_of(c, d);
      cur.set_supply(p.first, p.second, c - amt);
      cur.set_demand(p.first, p.second, d - amt);
      trace.add({StepKind::ParallelReduce, p.first, p.second, -1, amt, {}});
      changed = true;
    }
    for (int v : shape.spokes) {
      Rational l = cur.capacity(shape.s, v), r = cur.capacity(v, shape.t);
      Rational k = floor_of((l + r - spoke_demand(cur, v)) / 2);
      k = min_of(k, min_of(l, r));
      if (k <= 0) continue;
      cur.set_supply(shape.s, v, l - k);
      cur.set_supply(v, shape.t, r - k);
      cur.add_supply(shape.s, shape.t, k);
      trace.add({StepKind::SpokeTighten, shape.s, shape.t, v, k, {}});
      changed = true;
    }
  }
}

bool is_spoke_pair(const K2mShape& shape, const NodePair& p) {
  auto in = [&](int v) { return std::find(shape.spokes.begin(), shape.spokes.end(), v) != shape.spokes.end(); };
  return in(p.first) && in(p.second);
}

// Spoke-to-spoke demands ordered by smaller spoke position, then larger.
std::vector<NodePair> spoke_demands(const Instance& inst, const K2mShape& shape) {
  auto idx = [&](int v) { return std::find(shape.spokes.begin(), shape.spokes.end(), v) - shape.spokes.begin(); };
  std::vector<NodePair> out;
  for (const auto& [p, d] : inst.demand)
    if (is_spoke_pair(shape, p)) out.push_back(p);
  std::sort(out.begin(), out.end(), [&](const NodePair& a, const NodePair& b) {
    auto ka = std::minmax(idx(a.first), idx(a.second)), kb = std::minmax(idx(b.first), idx(b.second));
    return ka < kb;
  });
  return out;
}

// Intermediate nodes to try for a demand, in order: hubs s then t for a
// spoke pair, the other hub for a hub-spoke pair, the spokes for s-t.
std::vector<int> push_targets(const K2mShape& shape, const NodePair& p) {
  bool a_hub = p.first == shape.s || p.first == shape.t, b_hub = p.second == shape.s || p.second == shape.t;
  if (a_hub && b_hub) return shape.spokes;
  if (a_hub || b_hub) return {a_hub ? shape.s + shape.t - p.first : shape.s + shape.t - p.second};
  return {shape.s, shape.t};
}

// One successful push, trying spoke pairs first, then hub-spoke pairs, then
// the hub pair.
bool push_once(Instance& cur, const K2mShape& shape, ReductionTrace& trace, int& pushes) {
  std::vector<NodePair> order = spoke_demands(cur, shape);
  for (const auto& [p, d] : cur.demand)
    if (!is_spoke_pair(shape, p) && key(shape.s, shape.t) != p) order.push_back(p);
  if (cur.demand_of(shape.s, shape.t) > 0) order.push_back(key(shape.s, shape.t));
  for (auto p : order)
    for (int w : push_targets(shape, p)) {
      auto pr = push_demand(cur, p.first, p.second, w);
      if (!pr.ok) continue;
      trace.add({StepKind::Push, p.first, p.second, w, push_unit(cur, p.first, p.second), {}});
      cur = std::move(pr.after);
      normalize_into(cur, shape, trace);
      if (++pushes > 100000) throw Error(ErrorKind::InternalError, "K_{2m} push loop exceeded 100000 pushes");
      return true;
    }
  return false;
}

void require_conditions(const Instance& inst) {
  if (!inst.is_integral()) throw Error(ErrorKind::NonIntegral, "K_{2m} routing needs integral data");
  if (!is_eulerian(inst)) throw Error(ErrorKind::NotEulerian, "G + H has a node of odd degree");
  auto rep = check_cut_condition(inst);
  if (!rep.holds) throw Error(ErrorKind::Violated, "cut condition fails with surplus " + to_string(rep.worst.surplus));
}

Routing bipartite_core(Instance cur, const K2mShape& shape, ReductionTrace trace) {
  auto parts = spoke_bipartition(cur, shape);
  if (!parts) throw Error(ErrorKind::NotBipartite, "spoke demands contain an odd cycle");
  // Counting argument: applies when every spoke keeps both edges, every spoke
  // cut is tight and only spoke-to-spoke demands remain.
  bool plain = cur.demand.size() == spoke_demands(cur, shape).size();
  for (int v : shape.spokes)
    if (cur.capacity(shape.s, v) == 0 || cur.capacity(v, shape.t) == 0 ||
        cur.capacity(shape.s, v) + cur.capacity(v, shape.t) != spoke_demand(cur, v))
      plain = false;
  if (plain) {
    Rational lx = 0, ly = 0, rx = 0, ry = 0;
    for (int v : parts->first) {
      lx += cur.capacity(shape.s, v);
      rx += cur.capacity(v, shape.t);
    }
    for (int v : parts->second) {
      ly += cur.capacity(shape.s, v);
      ry += cur.capacity(v, shape.t);
    }
    if (lx != ly || rx != ry) throw Error(ErrorKind::InternalError, "tight spokes with unbalanced colour classes");
  }
  int pushes = 0;
  while (!cur.demand.empty())
    if (!push_once(cur, shape, trace, pushes))
      throw Error(ErrorKind::InternalError, "no demand pushes at " + cur.pair_name(cur.demand.begin()->first));
  Routing r;
  r.integral = true;
  return trace.lift(r);
}

std::optional<OddMinorWitness> find_odd_minor(const Instance& inst, const K2mShape& shape);

}  // namespace

K2mNormalized normalize_k2m(const Instance& inst) {
  K2mNormalized out{inst, k2m_shape(inst), {}};
  require_conditions(inst);
  normalize_into(out.instance, out.shape, out.trace);
  return out;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> spoke_bipartition(const Instance& inst,
                                                                                 const K2mShape& shape) {
  std::map<int, int> colour;
  std::map<int, std::vector<int>> nb;
  for (const auto& [p, d] : inst.demand)
    if (is_spoke_pair(shape, p)) {
      nb[p.first].push_back(p.second);
      nb[p.second].push_back(p.first);
    }
  for (int v : shape.spokes) {
    if (colour.count(v)) continue;
    colour[v] = 0;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : nb[x]) {
        if (!colour.count(y)) {
          colour[y] = 1 - colour[x];
          stack.push_back(y);
        } else if (colour[y] == colour[x]) {
          return std::nullopt;
        }
      }
    }
  }
  std::pair<std::vector<int>, std::vector<int>> out;
  for (int v : shape.spokes) (colour[v] == 0 ? out.first : out.second).push_back(v);
  return out;
}

Routing route_path_bipartite(const Instance& inst) {
  auto norm = normalize_k2m(inst);
  Routing r = bipartite_core(norm.instance, norm.shape, norm.trace);
  auto rep = verify_routing(inst, r, 1);
  if (!rep.ok) throw Error(ErrorKind::InternalError, "path-bipartite routing failed verification: " + rep.reason);
  return r;
}

std::optional<OddMinorWitness> detect_odd_k2p(const Instance& inst) {
  auto shape = k2m_shape(inst);
  if (!inst.is_integral() || !is_eulerian(inst) || !check_cut_condition(inst).holds) return find_odd_minor(inst, shape);
  auto norm = normalize_k2m(inst);
  return find_odd_minor(norm.instance, norm.shape);
}

namespace {

std::optional<OddMinorWitness> find_odd_minor(const Instance& inst, const K2mShape& shape) {
  int m = static_cast<int>(shape.spokes.size());
  if (m > 12) throw Error(ErrorKind::TooLarge, "odd minor search is limited to 12 spokes");
  const auto& sp = shape.spokes;
  std::vector<std::vector<bool>> linked(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) linked[i][j] = i != j && inst.demand_of(sp[i], sp[j]) > 0;

  // Kept sets in increasing size, then increasing mask.
  std::vector<int> masks;
  for (int mask = 1; mask < (1 << m); ++mask) {
    int p = __builtin_popcount(mask);
    if (p >= 3 && p % 2 == 1) masks.push_back(mask);
  }
  std::stable_sort(masks.begin(), masks.end(),
                   [](int a, int b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  for (int mask : masks) {
    // The hub demand: original, or created by merging the rest into the hubs.
    OddMinorWitness w;
    w.roles.assign(m, SpokeRole::Delete);
    bool hub = false;
    if (inst.demand_of(shape.s, shape.t) > 0) {
      hub = true;
      w.hub_demand = key(shape.s, shape.t);
    }
    for (int i = 0; i < m && !hub; ++i) {
      if (mask >> i & 1) continue;
      if (inst.demand_of(sp[i], shape.t) > 0) {
        w.roles[i] = SpokeRole::MergeS;
        w.hub_demand = key(sp[i], shape.t);
        hub = true;
      } else if (inst.demand_of(sp[i], shape.s) > 0) {
        w.roles[i] = SpokeRole::MergeT;
        w.hub_demand = key(sp[i], shape.s);
        hub = true;
      }
    }
    for (int i = 0; i < m && !hub; ++i)
      for (int j = 0; j < m && !hub; ++j)
        if (!(mask >> i & 1) && !(mask >> j & 1) && linked[i][j]) {
          w.roles[i] = SpokeRole::MergeS;
          w.roles[j] = SpokeRole::MergeT;
          w.hub_demand = key(sp[i], sp[j]);
          hub = true;
        }
    if (!hub) continue;

    // Hamiltonian cycle on the kept spokes, anchored at the lowest one.
    std::vector<int> kept;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) kept.push_back(i);
    int p = static_cast<int>(kept.size());
    std::vector<std::vector<int>> from(1 << p, std::vector<int>(p, -2));
    from[1][0] = -1;
    for (int sub = 1; sub < (1 << p); ++sub)
      for (int last = 0; last < p; ++last) {
        if (from[sub][last] == -2) continue;
        for (int nx = 1; nx < p; ++nx)
          if (!(sub >> nx & 1) && linked[kept[last]][kept[nx]] && from[sub | 1 << nx][nx] == -2)
            from[sub | 1 << nx][nx] = last;
      }
    int full = (1 << p) - 1;
    for (int last = 1; last < p; ++last) {
      if (from[full][last] == -2 || !linked[kept[last]][kept[0]]) continue;
      std::vector<int> cyc;
      for (int sub = full, x = last; x >= 0;) {
        cyc.push_back(sp[kept[x]]);
        int prev = from[sub][x];
        sub &= ~(1 << x);
        x = prev;
      }
      std::reverse(cyc.begin(), cyc.end());
      for (int i : kept) w.roles[i] = SpokeRole::Keep;
      w.p = p;
      w.cycle = cyc;
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace

K2mResult route_k2m(const Instance& inst) {
  auto norm = normalize_k2m(inst);
  Instance cur = norm.instance;
  ReductionTrace trace = norm.trace;
  K2mResult res;
  auto finish = [&](const Routing& r) {
    auto rep = verify_routing(inst, r, 1);
    if (!rep.ok) throw Error(ErrorKind::InternalError, "K_{2m} routing failed verification: " + rep.reason);
    res.routing = r;
    return res;
  };
  for (;;) {
    if (spoke_bipartition(cur, norm.shape)) return finish(bipartite_core(cur, norm.shape, trace));
    std::set<int> ends;
    for (const auto& [p, d] : cur.demand) {
      ends.insert(p.first);
      ends.insert(p.second);
    }
    if (ends.size() <= 4) {
      if (auto r = exhaustive_integral_route(cur, 1)) {
        res.small_case = true;
        return finish(trace.lift(*r));
      }
    }
    if (!push_once(cur, norm.shape, trace, res.pushes)) break;
  }
  res.witness = find_odd_minor(norm.instance, norm.shape);
  if (!res.witness) throw Error(ErrorKind::InternalError, "no push succeeds and no odd minor exists");
  return res;
}

}  // namespace multiflow
