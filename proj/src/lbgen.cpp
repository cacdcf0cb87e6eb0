#include "multiflow/lbgen.hpp"

#include "multiflow/error.hpp"

namespace multiflow {

namespace {

void check_m(int m) {
  if (m < 4 || m % 2 != 0) throw Error(ErrorKind::OddM, "gadget size must be even and at least 4");
}

}  // namespace

Rational gadget_scale(int m, const Rational& c) {
  check_m(m);
  if (c <= 0) throw Error(ErrorKind::NonPositiveC, "gadget value must be positive");
  Rational s = 4 * c / Rational(m * (m - 2));
  s.canonicalize();
  return s;
}

Instance gadget(int m, const Rational& c) {
  Rational sc = gadget_scale(m, c);
  Instance g;
  g.add_node("s");
  g.add_node("t");
  for (int i = 1; i <= m; ++i) g.add_node("v" + std::to_string(i));
  Rational cap = sc * (m - 1) / 2;
  for (int i = 0; i < m; ++i) {
    g.add_supply(0, 2 + i, cap);
    g.add_supply(1, 2 + i, cap);
    for (int j = i + 1; j < m; ++j) g.add_demand(2 + i, 2 + j, sc);
  }
  return g;
}

Routing gadget_routing(int m, const Rational& c) {
  Rational half = gadget_scale(m, c) / 2;
  Routing r;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int hub : {0, 1}) r.add(2 + i, 2 + j, {2 + i, hub, 2 + j}, half);
  return r;
}

Instance amplify(const Instance& inst, int m) {
  check_m(m);
  Instance out;
  out.nodes = inst.nodes;
  out.demand = inst.demand;
  // Gadget ids continue after those of earlier rounds so names stay unique.
  int idx = 0;
  for (const auto& name : inst.nodes)
    if (name.find("/v") != std::string::npos) ++idx;
  idx /= m;
  for (const auto& [p, c] : inst.supply) {
    if (c <= 0) throw Error(ErrorKind::NonPositiveC, "capacity must be positive");
    Rational sc = gadget_scale(m, c), cap = sc * (m - 1) / 2;
    std::vector<int> spokes;
    for (int i = 1; i <= m; ++i)
      spokes.push_back(out.add_node("e" + std::to_string(idx) + "/v" + std::to_string(i)));
    for (std::size_t i = 0; i < spokes.size(); ++i) {
      out.add_supply(p.first, spokes[i], cap);
      out.add_supply(p.second, spokes[i], cap);
      for (std::size_t j = i + 1; j < spokes.size(); ++j) out.add_demand(spokes[i], spokes[j], sc);
    }
    ++idx;
  }
  return out;
}

LBFamily generate_lb(int m, int k) {
  check_m(m);
  if (k < 0) throw Error(ErrorKind::InvalidInput, "level must be nonnegative");
  LBFamily f;
  f.m = m;
  f.level = k;
  f.instance.add_node("s");
  f.instance.add_node("t");
  f.instance.add_supply(0, 1, 1);
  f.instance.add_demand(0, 1, 1);
  // Nodes grow as n' = n + m * edges and edges as 2m * edges.
  double nodes = 2, edges = 1;
  for (int level = 0; level < k; ++level) {
    nodes += m * edges;
    edges *= 2 * m;
    if (nodes > 1e5) throw Error(ErrorKind::ResourceCap, "amplified instance would exceed 100000 nodes");
  }
  for (int level = 0; level < k; ++level) f.instance = amplify(f.instance, m);
  f.expected = expected_gap(m, k);
  return f;
}

Rational expected_gap(int m, int k) {
  check_m(m);
  Rational q(m - 2, 2 * (m - 1)), term = 1, sum = 0;
  q.canonicalize();
  for (int i = 0; i <= k; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

}  // namespace multiflow
