#include "multiflow/router.hpp"

#include "multiflow/compliance.hpp"
#include "multiflow/error.hpp"
#include "multiflow/flowlp.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <set>

namespace multiflow {

namespace {

void require_integral(const Instance& inst) {
  if (!inst.is_integral()) throw Error(ErrorKind::NonIntegral, "capacities and demands must be integers");
}

void require_eulerian(const Instance& inst) {
  require_integral(inst);
  if (!is_eulerian(inst)) throw Error(ErrorKind::NotEulerian, "G + H has a node of odd degree");
}

void require_cut_condition(const Instance& inst) {
  if (static_cast<int>(inst.active_nodes().size()) > node_cap()) return;
  auto rep = check_cut_condition(inst);
  if (!rep.holds) throw Error(ErrorKind::Violated, "cut condition fails with surplus " + to_string(rep.worst.surplus));
}

std::vector<NodePair> supply_pairs(const Instance& inst) {
  std::vector<NodePair> out;
  for (const auto& [p, c] : inst.supply) out.push_back(p);
  return out;
}

long as_count(const Rational& q) {
  mpz_class z = q.get_num();
  if (q.get_den() != 1 || !z.fits_slong_p()) throw Error(ErrorKind::TooLarge, "value does not fit a machine integer");
  return z.get_si();
}

void check_verified(const Instance& inst, const Routing& r, const Rational& alpha, const char* who) {
  auto rep = verify_routing(inst, r, alpha);
  if (!rep.ok) throw Error(ErrorKind::InternalError, std::string(who) + " produced an invalid routing: " + rep.reason);
}

}  // namespace

bool is_ring(const Instance& inst) {
  auto adj = inst.supply_adjacency();
  std::vector<int> act;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!adj[v].empty()) {
      if (adj[v].size() != 2) return false;
      act.push_back(v);
    }
  return act.size() >= 3 && connected_on(act, adj);
}

Routing route_ring(const Instance& inst, std::uint64_t node_budget) {
  if (!is_ring(inst)) throw Error(ErrorKind::NotRing, "supply graph is not a single cycle");
  auto adj = inst.supply_adjacency();
  for (const auto& [p, d] : inst.demand)
    if (adj[p.first].empty() || adj[p.second].empty())
      throw Error(ErrorKind::NotRing, "demand endpoint off the cycle");
  require_eulerian(inst);

  // Cyclic order from the smallest node towards its smaller neighbour.
  std::vector<int> order, pos(inst.num_nodes(), -1);
  int start = -1;
  for (int v = 0; v < inst.num_nodes() && start < 0; ++v)
    if (!adj[v].empty()) start = v;
  for (int prev = -1, cur = start;;) {
    pos[cur] = static_cast<int>(order.size());
    order.push_back(cur);
    auto nb = adj[cur];
    std::sort(nb.begin(), nb.end());
    int next = nb[0] != prev ? nb[0] : nb[1];
    if (prev < 0) next = nb[0];
    prev = cur;
    cur = next;
    if (cur == start) break;
  }
  int n = static_cast<int>(order.size());
  std::vector<long> residual(n);
  for (int i = 0; i < n; ++i) residual[i] = as_count(inst.capacity(order[i], order[(i + 1) % n]));

  struct Pair {
    int a, b;    // key order
    int lo, hi;  // ring positions, lo < hi
    long units;
  };
  std::vector<Pair> pairs;
  for (const auto& [p, d] : inst.demand) {
    int pa = pos[p.first], pb = pos[p.second];
    pairs.push_back({p.first, p.second, std::min(pa, pb), std::max(pa, pb), as_count(d)});
  }
  // Larger demands first, then longer spans.
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.units != y.units) return x.units > y.units;
    return x.hi - x.lo > y.hi - y.lo;
  });

  // Edges i and j (i < j) bound the arc of positions i+1..j; a pair crosses
  // that cut when exactly one endpoint lies on the arc.
  auto crosses = [&](const Pair& p, int i, int j) {
    bool a = p.lo > i && p.lo <= j, b = p.hi > i && p.hi <= j;
    return a != b;
  };
  std::vector<std::vector<long>> pending(n, std::vector<long>(n, 0));
  for (const auto& p : pairs)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (crosses(p, i, j)) pending[i][j] += p.units;
  auto cuts_ok = [&]() {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (pending[i][j] > residual[i] + residual[j]) return false;
    return true;
  };
  if (!cuts_ok()) throw Error(ErrorKind::Violated, "a pair of ring edges carries less capacity than the demand across it");

  std::vector<long> forward(pairs.size(), 0);
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == pairs.size()) return true;
    if (++nodes > node_budget) throw Error(ErrorKind::TooLarge, "ring search budget exhausted");
    const Pair& p = pairs[k];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (crosses(p, i, j)) pending[i][j] -= p.units;
    // Prefer putting more units on the shorter arc.
    bool fwd_short = 2 * (p.hi - p.lo) <= n;
    bool found = false;
    for (long t = 0; t <= p.units && !found; ++t) {
      long f = fwd_short ? p.units - t : t;
      bool fits = true;
      for (int e = 0; e < n; ++e) {
        bool on_fwd = e >= p.lo && e < p.hi;
        residual[e] -= on_fwd ? f : p.units - f;
        if (residual[e] < 0) fits = false;
      }
      if (fits && cuts_ok() && search(k + 1)) {
        forward[k] = f;
        found = true;
      }
      if (!found)
        for (int e = 0; e < n; ++e) residual[e] += (e >= p.lo && e < p.hi) ? f : p.units - f;
    }
    if (!found)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (crosses(p, i, j)) pending[i][j] += p.units;
    return found;
  };
  if (!search(0)) throw Error(ErrorKind::InternalError, "no ring routing although the cut and parity conditions hold");

  Routing r;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Pair& p = pairs[k];
    std::vector<int> fwd, back;
    for (int i = p.lo; i <= p.hi; ++i) fwd.push_back(order[i]);
    for (int i = p.lo;; i = (i - 1 + n) % n) {
      back.push_back(order[i]);
      if (i == p.hi) break;
    }
    for (auto* path : {&fwd, &back})
      if (path->front() != p.a) std::reverse(path->begin(), path->end());
    if (forward[k] > 0) r.add(p.a, p.b, fwd, forward[k]);
    if (p.units - forward[k] > 0) r.add(p.a, p.b, back, p.units - forward[k]);
  }
  r.integral = true;
  return r;
}

namespace {

Routing fully_compliant_rec(const Instance& inst, int depth, RouterStats& st) {
  st.depth = std::max(st.depth, depth);
  Routing merged;
  merged.integral = true;
  if (inst.demand.empty()) return merged;
  auto rr = reduce_basic(inst);
  for (const auto& block : rr.blocks) {
    Instance sub = restrict_to(rr.reduced, block);
    Routing rb;
    if (find_strict_2cut(sub).ring) {
      ++st.rings;
      rb = route_ring(sub);
    } else {
      std::optional<Partition> part;
      for (auto [u, v] : strict_2cuts(sub))
        if ((part = choose_partition(sub, u, v))) break;
      if (!part) throw Error(ErrorKind::CrossingDemand, "every strict 2-cut is crossed by a demand");
      auto split = split_at_2cut(sub, *part);
      auto r1 = fully_compliant_rec(split.first, depth + 1, st);
      auto r2 = fully_compliant_rec(split.second, depth + 1, st);
      rb = lift_split(r1, r2, split);
    }
    merged.merge(rb);
  }
  Routing out = rr.trace.lift(merged);
  out.integral = true;
  return out;
}

}  // namespace

Routing route_fully_compliant(const Instance& inst, RouterStats* stats) {
  require_eulerian(inst);
  auto edges = supply_pairs(inst);
  for (const auto& [p, d] : inst.demand) {
    auto plus = edges;
    plus.push_back(p);
    if (has_k4_minor(inst.num_nodes(), plus))
      throw Error(ErrorKind::NotFullyCompliant, "adding " + inst.pair_name(p) + " creates a K4 minor");
  }
  require_cut_condition(inst);
  RouterStats local;
  RouterStats& st = stats ? *stats : local;
  Routing r = fully_compliant_rec(inst, 0, st);
  check_verified(inst, r, 1, "fully compliant router");
  return r;
}

Routing route_compliant(const Instance& inst, RouterStats* stats) {
  auto rec = recognize_sp(inst);
  if (!rec.ok) throw Error(ErrorKind::NotSeriesParallel, "supply graph has a K4 minor");
  return route_compliant(inst, rec.tree, stats);
}

Routing route_compliant(const Instance& inst, const SPTree& tree, RouterStats* stats) {
  require_eulerian(inst);
  require_cut_condition(inst);
  RouterStats local;
  RouterStats& st = stats ? *stats : local;
  for (const auto& [p, label] : classify_demands(inst, tree))
    if (label == Compliance::NonCompliant)
      throw Error(ErrorKind::NotCompliant, "demand " + inst.pair_name(p) + " has no directed path");

  auto spans = tree.spans();
  auto span_size = [&](int x, int y) {
    int l = tree.lowest_common(x, y);
    return l < 0 ? std::size_t(-1) : spans[l].size();
  };
  auto measure = [&](const Instance& x) {
    Rational total = 0;
    for (const auto& [p, d] : x.demand)
      if (x.capacity(p.first, p.second) == 0 && !is_two_cut(x, p.first, p.second))
        total += d * static_cast<long>(span_size(p.first, p.second));
    return total;
  };
  Instance cur = inst;
  ReductionTrace pushes;
  std::set<EdgeMap> seen{cur.demand};
  for (;;) {
    auto labels = classify_demands(cur, tree);
    std::optional<NodePair> pick;
    for (const auto& [p, label] : labels) {
      if (label == Compliance::NonCompliant)
        throw Error(ErrorKind::InternalError, "push created a non-compliant demand " + cur.pair_name(p));
      if (label == Compliance::Compliant && !pick) pick = p;
    }
    if (!pick) break;
    auto [u, v] = *pick;
    auto w = witness_2cut_on_path(cur, tree, u, v);
    int via = w.l;
    auto pr = push_demand(cur, u, v, via);
    if (!pr.ok) {
      auto left = pr.witness;
      via = w.r;
      pr = push_demand(cur, u, v, via);
      if (!pr.ok) {
        auto show = [&](const Cut& c) {
          std::string s;
          for (int x : c.side) s += (s.empty() ? "" : ",") + cur.name(x);
          return "{" + s + "}";
        };
        throw Error(ErrorKind::InternalError, "demand " + cur.pair_name(*pick) + " pushes to neither " +
                                                  cur.name(w.l) + " (tight " + show(left) + ") nor " +
                                                  cur.name(w.r) + " (tight " + show(pr.witness) + ")");
      }
    }
    // Progress measure: total decomposition span of the compliant-only units.
    // It is reported rather than enforced; termination rests on the state
    // check below.
    auto before = measure(cur);
    if (measure(pr.after) >= before) ++st.measure_stalls;
    if (st.pushes >= 100000) throw Error(ErrorKind::InternalError, "push loop exceeded 100000 pushes");
    if (!seen.insert(pr.after.demand).second)
      throw Error(ErrorKind::InternalError, "push loop revisited a demand state at " + cur.pair_name(*pick));
    pushes.add({StepKind::Push, u, v, via, push_unit(cur, u, v), {}});
    cur = std::move(pr.after);
    ++st.pushes;
  }
  Routing r = pushes.lift(route_fully_compliant(cur, &st));
  r.integral = true;
  check_verified(inst, r, 1, "compliant router");
  return r;
}

namespace {

Routing sp5_block(const Instance& sub, RouterStats& st) {
  auto rec = recognize_sp(sub);
  if (!rec.ok) throw Error(ErrorKind::NotSeriesParallel, "block has a K4 minor");
  const SPTree& tree = rec.tree;

  bool compliant = true;
  for (const auto& [p, label] : classify_demands(sub, tree))
    if (label == Compliance::NonCompliant) compliant = false;
  if (compliant && is_eulerian(sub)) return route_compliant(sub, tree, &st);

  auto lp = min_congestion_flow(sub);
  st.fractional_congestion = max_of(st.fractional_congestion, lp.congestion);
  if (lp.congestion > 2)
    throw Error(ErrorKind::InternalError, "fractional congestion " + to_string(lp.congestion) + " exceeds 2");

  // Move each demand onto the terminal of its lowest separating 2-cut that
  // carries at least half of its fractional flow.
  Instance moved = sub.with_demands({});
  ReductionTrace pushes;
  for (const auto& [p, d] : sub.demand) {
    auto cut = highest_2cut(sub, tree, p.first, p.second);
    if (!cut) {
      moved.add_demand(p.first, p.second, d);
      continue;
    }
    int w = 2 * flow_through_node(lp.routing, p, cut->first) >= d ? cut->first : cut->second;
    moved.add_demand(p.first, w, d);
    moved.add_demand(w, p.second, d);
    pushes.add({StepKind::Push, p.first, p.second, w, d, {}});
    ++st.pipeline_pushes;
  }
  Instance g4 = moved.scaled_supply(4);
  auto rep = check_cut_condition(g4);
  if (!rep.holds)
    throw Error(ErrorKind::InternalError, "moved demands violate the cut condition in 4G, surplus " +
                                              to_string(rep.worst.surplus));
  // Parity repair: 4G is even everywhere, so the odd nodes come from demands.
  std::vector<int> odd;
  auto deg = g4.demand_degree();
  for (int v = 0; v < g4.num_nodes(); ++v)
    if (mpz_odd_p(deg[v].get_num_mpz_t())) odd.push_back(v);
  auto join = tjoin(g4.num_nodes(), supply_pairs(sub), odd);
  for (auto [a, b] : join) g4.add_supply(a, b, 1);
  st.tjoin_edges += static_cast<int>(join.size());
  return pushes.lift(route_compliant(g4, tree, &st));
}

}  // namespace

RouterResult route_sp_congestion5(const Instance& inst) {
  require_integral(inst);
  if (has_k4_minor(inst.num_nodes(), supply_pairs(inst)))
    throw Error(ErrorKind::NotSeriesParallel, "supply graph has a K4 minor");
  ReduceOptions opt;
  opt.supply_slack = opt.demand_slack = false;
  RouterResult res;
  auto rr = reduce_basic(inst, opt);
  Routing merged;
  for (const auto& block : rr.blocks) merged.merge(sp5_block(restrict_to(rr.reduced, block), res.stats));
  res.routing = rr.trace.lift(merged);
  res.routing.integral = true;
  res.trace = rr.trace;
  res.congestion = res.routing.max_congestion(inst);
  check_verified(inst, res.routing, 5, "congestion-5 pipeline");
  return res;
}

}  // namespace multiflow
