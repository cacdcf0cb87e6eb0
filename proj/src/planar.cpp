#include "multiflow/error.hpp"
#include "multiflow/flowlp.hpp"
#include "multiflow/reroute.hpp"
#include "sink_flow.hpp"

#include <algorithm>
#include <set>

namespace multiflow {

void validate_embedding(const Instance& inst) {
  if (inst.faces.empty()) throw Error(ErrorKind::EmbeddingMismatch, "instance carries no face lists");
  std::map<NodePair, int> sides;
  for (const auto& face : inst.faces) {
    if (face.size() < 2) continue;
    for (std::size_t i = 0; i < face.size(); ++i) {
      int a = face[i], b = face[(i + 1) % face.size()];
      if (a < 0 || b < 0 || a >= inst.num_nodes() || b >= inst.num_nodes())
        throw Error(ErrorKind::EmbeddingMismatch, "face refers to an unknown node");
      if (inst.capacity(a, b) == 0)
        throw Error(ErrorKind::EmbeddingMismatch, "face step " + inst.pair_name(key(a, b)) + " is not a supply pair");
      ++sides[key(a, b)];
    }
  }
  for (const auto& [e, c] : inst.supply)
    if (sides[e] != 2)
      throw Error(ErrorKind::EmbeddingMismatch,
                  "supply pair " + inst.pair_name(e) + " borders " + std::to_string(sides[e]) + " face sides");
  auto adj = inst.supply_adjacency();
  std::vector<bool> removed(inst.num_nodes());
  int nodes = 0;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    removed[v] = adj[v].empty();
    nodes += !removed[v];
  }
  auto label = component_labels(inst.num_nodes(), adj, removed);
  std::set<int> comps;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!removed[v]) comps.insert(label[v]);
  long euler = nodes - static_cast<long>(inst.supply.size()) + static_cast<long>(inst.faces.size());
  if (euler != 1 + static_cast<long>(comps.size()))
    throw Error(ErrorKind::EmbeddingMismatch, "Euler's formula fails for the given faces");
}

PlanarLayers planar_layers(const Instance& inst) {
  validate_embedding(inst);
  PlanarLayers out;
  out.layer_of.assign(inst.num_nodes(), 0);
  std::vector<int> next;
  for (int v : inst.faces[0])
    if (!out.layer_of[v]) {
      out.layer_of[v] = 1;
      next.push_back(v);
    }
  // After removing the first i layers, every face touching a removed node has
  // merged into the outer face.
  while (!next.empty()) {
    std::sort(next.begin(), next.end());
    out.layers.push_back(next);
    int depth = static_cast<int>(out.layers.size());
    next.clear();
    for (const auto& face : inst.faces) {
      bool touches = std::any_of(face.begin(), face.end(),
                                 [&](int v) { return out.layer_of[v] != 0 && out.layer_of[v] <= depth; });
      if (!touches) continue;
      for (int v : face)
        if (!out.layer_of[v]) {
          out.layer_of[v] = depth + 1;
          next.push_back(v);
        }
    }
  }
  return out;
}

namespace {

Routing integral_search(const Instance& inst) {
  if (static_cast<int>(inst.active_nodes().size()) > 20)
    throw Error(ErrorKind::TooLarge, "single-face search is limited to 20 active nodes");
  SearchOptions opt;
  if (auto r = exhaustive_integral_route(inst, 1, opt)) return *r;
  opt.paths_per_pair = 512;
  opt.node_budget = 1u << 22;
  if (auto r = exhaustive_integral_route(inst, 1, opt)) return *r;
  throw Error(ErrorKind::InternalError, "no integral single-face routing found");
}

}  // namespace

Routing os_oracle(const Instance& inst, const std::vector<int>& face, OSMode mode) {
  std::set<int> on(face.begin(), face.end());
  for (const auto& [p, d] : inst.demand)
    if (!on.count(p.first) || !on.count(p.second))
      throw Error(ErrorKind::NotSingleFace, "demand " + inst.pair_name(p) + " leaves the face");
  if (!check_cut_condition(inst).holds) throw Error(ErrorKind::Violated, "cut condition fails");
  if (inst.demand.empty()) return Routing{{}, true};
  if (mode == OSMode::Fractional) {
    auto lp = min_congestion_flow(inst);
    if (lp.congestion > 1) throw Error(ErrorKind::InternalError, "single-face instance needs congestion above 1");
    return lp.routing;
  }
  if (!inst.is_integral()) throw Error(ErrorKind::NonIntegral, "integral modes need integral data");
  if (mode == OSMode::IntegralIfEulerian) {
    if (!is_eulerian(inst)) throw Error(ErrorKind::NotEulerian, "G + H has a node of odd degree");
    return integral_search(inst);
  }
  // Doubled capacities minus a T-join on the odd demand-degree nodes: Eulerian,
  // still cut-feasible, and no edge exceeds twice its capacity.
  Instance g = inst.scaled_supply(2);
  auto deg = inst.demand_degree();
  std::vector<int> odd;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!is_integer(deg[v] / 2)) odd.push_back(v);
  std::vector<NodePair> edges;
  for (const auto& [e, c] : inst.supply) edges.push_back(e);
  for (auto e : tjoin(inst.num_nodes(), edges, odd)) g.set_supply(e.first, e.second, g.capacity(e.first, e.second) - 1);
  Routing r = integral_search(g);
  r.integral = true;
  return r;
}

FacesResult route_k_faces(const Instance& inst, const std::vector<std::vector<int>>& faces) {
  if (!inst.is_integral()) throw Error(ErrorKind::NonIntegral, "k-faces routing needs integral data");
  std::vector<EdgeMap> groups(faces.size());
  for (const auto& [p, d] : inst.demand) {
    std::size_t i = 0;
    for (; i < faces.size(); ++i)
      if (std::count(faces[i].begin(), faces[i].end(), p.first) || std::count(faces[i].begin(), faces[i].end(), p.second))
        break;
    if (i == faces.size()) throw Error(ErrorKind::UncoveredDemand, "demand " + inst.pair_name(p) + " touches no face");
    groups[i][p] = d;
  }
  if (!check_cut_condition(inst).holds) throw Error(ErrorKind::Violated, "cut condition fails");
  FacesResult res;
  res.routing.integral = true;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (groups[i].empty()) {
      res.per_face.push_back(0);
      continue;
    }
    Instance sub = inst.with_demands(groups[i]);
    auto red = node_cover_reduce(sub, faces[i]);
    Routing core = os_oracle(red.core, faces[i], OSMode::IntegralOn2G);
    Routing part = compose_cover(sub, red, core);
    res.per_face.push_back(part.max_congestion(inst));
    res.routing.merge(part);
  }
  res.routing.integral = res.routing.amounts_integral();
  res.congestion = res.routing.max_congestion(inst);
  auto rep = verify_routing(inst, res.routing, 5 * static_cast<long>(faces.size()));
  if (!rep.ok) throw Error(ErrorKind::InternalError, "k-faces routing failed verification: " + rep.reason);
  return res;
}

namespace {

Rational pow6(int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= 6;
  return r;
}

// Congestion of a set of flows relative to the capacities of `g`.
Rational relative(const Instance& g, const Routing& r) { return r.max_congestion(g); }

struct Shell {
  const Instance& g;
  const PlanarLayers& layers;
  std::vector<ShellLevel>& ledger;

  // Integral routing of `h` with loads at most scale * 6^k times capacity,
  // given that h routes fractionally in scale * G and every demand touches
  // the outer k layers.
  Routing route(const EdgeMap& h, const Rational& scale, int k) {
    if (h.empty()) return Routing{{}, true};
    int n = g.num_nodes();
    if (k == 1) {
      auto res = route_k_faces(g.scaled_supply(scale).with_demands(h), {layers.layers.at(0)});
      ShellLevel lv{1, scale, 0, relative(g, res.routing), 0, scale * 6};
      if (lv.peeled > 5 * scale) throw Error(ErrorKind::InternalError, "outer-face level exceeds 5 times its scale");
      ledger.push_back(lv);
      return res.routing;
    }
    auto outer = [&](int v) { return layers.layer_of[v] >= 1 && layers.layer_of[v] < k; };
    EdgeMap fk, rest;
    for (const auto& [p, d] : h) {
      bool at_k = layers.layer_of[p.first] == k || layers.layer_of[p.second] == k;
      (at_k && !outer(p.first) && !outer(p.second) ? fk : rest)[p] = d;
    }
    if (fk.empty()) return route(h, scale, k - 1);

    // Outer layers shrunk to one node.
    Instance shrunk;
    shrunk.nodes = g.nodes;
    int hub = shrunk.add_node("<outer>");
    auto image = [&](int v) { return outer(v) ? hub : v; };
    for (const auto& [e, c] : g.supply) {
      int a = image(e.first), b = image(e.second);
      if (a != b) shrunk.add_supply(a, b, scale * c);
    }
    for (const auto& [p, d] : fk) shrunk.add_demand(p.first, p.second, d);
    auto lp = min_congestion_flow(shrunk);
    if (lp.congestion > 1) throw Error(ErrorKind::InternalError, "inner layer demands do not route in the shrunk graph");

    EdgeMap through, avoid;
    for (const auto& [p, d] : fk) (2 * flow_through_node(lp.routing, p, hub) >= d ? through : avoid)[p] = d;

    // Demands mostly avoiding the hub: single outer face of the peeled graph.
    Routing peeled{{}, true};
    if (!avoid.empty()) {
      Instance inner;
      inner.nodes = g.nodes;
      for (const auto& [e, c] : g.supply)
        if (!outer(e.first) && !outer(e.second)) inner.add_supply(e.first, e.second, 2 * scale * c);
      for (const auto& [p, d] : avoid) inner.add_demand(p.first, p.second, d);
      peeled = route_k_faces(inner, {layers.layers.at(k - 1)}).routing;
    }

    // Demands mostly through the hub: both ends send their demand into the
    // outer layers over doubled capacities.
    std::map<int, Rational> supply_at;
    std::vector<detail::Request> requests;
    for (const auto& [p, d] : through)
      for (int end : {p.first, p.second}) {
        supply_at[end] += d;
        requests.push_back({p, end, d});
      }
    EdgeMap doubled;
    for (const auto& [e, c] : g.supply) doubled[e] = 2 * scale * c;
    std::vector<bool> sink(n);
    for (int v = 0; v < n; ++v) sink[v] = outer(v);
    auto assigned = detail::assign_paths(detail::single_sink_flow(n, doubled, supply_at, sink), requests);
    Routing connectors;
    std::map<NodePair, std::vector<PathFlow>> first_leg, second_leg;
    for (const auto& a : assigned) {
      connectors.add(a.from, a.path.back(), a.path, a.amount);
      (a.from == a.demand.first ? first_leg : second_leg)[a.demand].push_back({a.path, a.amount});
    }
    EdgeMap next = rest;
    struct Triple {
      NodePair demand;
      std::vector<int> head, tail;  // first end -> x', second end -> y'
      Rational amount;
    };
    std::vector<Triple> triples;
    for (const auto& [p, d] : through) {
      // Pair the two legs by amount.
      auto xs = first_leg[p], ys = second_leg[p];
      std::size_t i = 0, j = 0;
      while (i < xs.size() && j < ys.size()) {
        Rational take = min_of(xs[i].amount, ys[j].amount);
        triples.push_back({p, xs[i].path, ys[j].path, take});
        int a = xs[i].path.back(), b = ys[j].path.back();
        if (a != b) next[key(a, b)] += take;
        if ((xs[i].amount -= take) == 0) ++i;
        if ((ys[j].amount -= take) == 0) ++j;
      }
    }
    Routing inner = route(next, 4 * scale, k - 1);
    ShellLevel lv{k, scale, relative(g, inner), relative(g, peeled), relative(g, connectors), scale * pow6(k)};
    if (lv.recursive > 4 * scale * pow6(k - 1) || lv.peeled > 10 * scale || lv.connectors > 2 * scale ||
        4 * pow6(k - 1) + 10 + 2 > pow6(k))
      throw Error(ErrorKind::InternalError, "k-shell level " + std::to_string(k) + " exceeds its congestion ledger");
    ledger.push_back(lv);

    Routing out = peeled;
    for (const auto& t : triples) {
      int a = t.head.back(), b = t.tail.back();
      std::vector<PathFlow> mid = a == b ? std::vector<PathFlow>{{{a}, t.amount}} : inner.draw(a, b, t.amount);
      std::vector<int> back(t.tail.rbegin(), t.tail.rend());
      for (const auto& pf : concatenate({{{t.head, t.amount}}, mid, {{back, t.amount}}}))
        out.add(t.demand.first, t.demand.second, pf.path, pf.amount);
    }
    out.merge(inner);
    out.integral = out.amounts_integral();
    return out;
  }
};

}  // namespace

ShellResult route_kshell(const Instance& inst, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  auto layers = planar_layers(inst);
  if (!inst.is_integral()) throw Error(ErrorKind::NonIntegral, "k-shell routing needs integral data");
  for (const auto& [p, d] : inst.demand) {
    auto in = [&](int v) { return layers.layer_of[v] >= 1 && layers.layer_of[v] <= k; };
    if (!in(p.first) && !in(p.second))
      throw Error(ErrorKind::UncoveredDemand, "demand " + inst.pair_name(p) + " misses the outer layers");
  }
  ShellResult res;
  if (inst.demand.empty()) return res;
  auto lp = min_congestion_flow(inst);
  if (lp.congestion > 1)
    throw Error(ErrorKind::NotFractionallyRoutable, "fractional optimum is " + to_string(lp.congestion));
  Shell sh{inst, layers, res.ledger};
  res.routing = sh.route(inst.demand, 1, k);
  res.congestion = res.routing.max_congestion(inst);
  auto rep = verify_routing(inst, res.routing, pow6(k));
  if (!rep.ok) throw Error(ErrorKind::InternalError, "k-shell routing failed verification: " + rep.reason);
  return res;
}

}  // namespace multiflow
