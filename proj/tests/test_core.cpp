#include "doctest.h"
#include "oracles.hpp"

#include "multiflow/core.hpp"
#include "multiflow/error.hpp"

using namespace multiflow;
using oracle::build;

namespace {

Instance c4(const std::vector<oracle::E>& demands) {
  return build(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}}, demands);
}

// K_{2,3}: s=1, t=2, spokes 3,4,5; demands st and the spoke triangle.
Instance odd_k6() {
  return build(5, {{1, 3, 1}, {1, 4, 1}, {1, 5, 1}, {3, 2, 1}, {4, 2, 1}, {5, 2, 1}},
               {{1, 2, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}});
}

std::vector<int> zero_based(std::vector<int> v) {
  for (int& x : v) --x;
  return v;
}

}  // namespace

TEST_CASE("surplus on hand-checked sets") {
  auto inst = c4({{1, 3, 1}, {2, 4, 1}});
  // Oracle first, then frozen.
  CHECK(oracle::surplus(inst, {0, 1}) == 0);
  CHECK(surplus(inst, {0, 1}) == 0);
  CHECK(surplus(inst, {}) == 0);
  auto k6 = odd_k6();
  CHECK(oracle::surplus(k6, {0}) == 2);
  CHECK(surplus(k6, {0}) == 2);
}

TEST_CASE("surplus is symmetric under complement") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = oracle::witnessed(6, 4, 3, 5, rng);
    std::vector<int> S, T;
    for (int v = 0; v < 6; ++v) (rng() & 1 ? S : T).push_back(v);
    CHECK(surplus(inst, S) == surplus(inst, T));
  }
}

TEST_CASE("cut condition on the named examples") {
  auto crossing = c4({{1, 3, 1}, {2, 4, 1}});
  auto ref = oracle::min_cut(crossing);
  CHECK(ref.value == 0);
  CHECK(ref.side == zero_based({1, 2}));
  auto rep = check_cut_condition(crossing);
  CHECK(rep.holds);
  CHECK(rep.worst.surplus == 0);
  CHECK(rep.worst.side == zero_based({1, 2}));

  CHECK(check_cut_condition(odd_k6()).holds);
  CHECK(oracle::cut_ok(odd_k6()));

  // Demands {13, 24, 24}: the minimum is -1, attained first at {1,2}.
  auto bad = c4({{1, 3, 1}, {2, 4, 2}});
  auto bref = oracle::min_cut(bad);
  CHECK(bref.value == -1);
  CHECK(bref.side == zero_based({1, 2}));
  auto brep = check_cut_condition(bad);
  CHECK_FALSE(brep.holds);
  CHECK(brep.worst.surplus == -1);
  CHECK(brep.worst.side == zero_based({1, 2}));
  // The singleton {2} is tight but not violated.
  CHECK(surplus(bad, {1}) == 0);
}

TEST_CASE("cut condition agrees with the subset oracle on random instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    auto inst = oracle::witnessed(n, 3, 2, 4, rng);
    // Perturb some demands so that violations also occur.
    if (trial % 2 == 0) inst.add_demand(0, n - 1, Rational(static_cast<long>(rng() % 3), 2));
    auto ref = oracle::min_cut(inst);
    auto rep = check_cut_condition(inst);
    REQUIRE(ref.any);
    CHECK(rep.worst.surplus == ref.value);
    CHECK(rep.worst.side == ref.side);
    CHECK(rep.holds == (ref.value >= 0));
  }
}

TEST_CASE("disconnected supply with crossing demand is violated") {
  auto inst = build(4, {{1, 2, 1}, {3, 4, 1}}, {{1, 3, 2}});
  auto rep = check_cut_condition(inst);
  CHECK_FALSE(rep.holds);
  CHECK(rep.worst.surplus == -2);
}

TEST_CASE("node cap raises TooLarge") {
  Instance inst;
  for (int i = 0; i < 30; ++i) inst.add_node("n" + std::to_string(i));
  for (int i = 0; i + 1 < 30; ++i) inst.add_supply(i, i + 1, 1);
  CHECK_THROWS_AS(check_cut_condition(inst), Error);
  try {
    check_cut_condition(inst);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("min surplus across pairs matches the oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = oracle::witnessed(6, 3, 3, 4, rng);
    std::vector<NodePair> pairs;
    for (const auto& [p, c] : inst.supply) pairs.push_back(p);
    auto mins = min_surplus_across(inst, pairs);
    auto act = inst.active_nodes();
    int n = static_cast<int>(act.size());
    for (const auto& p : pairs) {
      Rational best = 1000000;
      for (long mask = 1; mask + 1 < (1L << n); ++mask) {
        std::set<int> S;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) S.insert(act[i]);
        if (S.count(p.first) == S.count(p.second)) continue;
        best = std::min(best, oracle::surplus(inst, S));
      }
      CHECK(mins.at(p) == best);
    }
  }
}

TEST_CASE("eulerian parity") {
  CHECK(is_eulerian(c4({{1, 3, 2}})));
  CHECK_FALSE(is_eulerian(c4({{1, 3, 1}, {2, 4, 1}})));
  CHECK(is_eulerian(c4({})));
  auto frac = c4({{1, 3, Rational(1, 2)}});
  CHECK_THROWS_AS(is_eulerian(frac), Error);
}

TEST_CASE("push demand") {
  auto single = c4({{2, 4, 1}});
  auto ok = push_demand(single, 1, 3, 0);
  CHECK(ok.ok);
  CHECK(ok.after.demand_of(1, 0) == 1);
  CHECK(ok.after.demand_of(0, 3) == 1);
  CHECK(ok.after.demand_of(1, 3) == 0);
  CHECK(oracle::cut_ok(ok.after));

  auto crossing = c4({{1, 3, 1}, {2, 4, 1}});
  auto bad = push_demand(crossing, 1, 3, 0);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.side == std::vector<int>{0});
  CHECK(bad.witness.surplus == -1);

  CHECK_THROWS_AS(push_demand(crossing, 0, 1, 2), Error);
}

TEST_CASE("push success matches the cut oracle and keeps parity") {
  std::mt19937_64 rng(3);
  int eulerian_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto inst = oracle::witnessed(6, 4, 2, 6, rng);
    if (inst.demand.empty()) continue;
    auto [p, d] = *inst.demand.begin();
    int w = static_cast<int>(rng() % 6);
    if (w == p.first || w == p.second) continue;
    auto res = push_demand(inst, p.first, p.second, w);
    CHECK(res.ok == oracle::cut_ok(res.after));
    if (is_eulerian(inst)) {
      ++eulerian_seen;
      CHECK(is_eulerian(res.after));
    }
  }
  CHECK(eulerian_seen >= 0);
}

TEST_CASE("tjoin examples") {
  CHECK(tjoin(3, {{0, 1}, {1, 2}}, {}).empty());
  auto j = tjoin(3, {{0, 1}, {1, 2}}, {0, 2});
  CHECK(j == std::vector<NodePair>{{0, 1}, {1, 2}});
  // Star centre 0, leaves 1..4.
  auto star = tjoin(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {1, 2});
  CHECK(star == std::vector<NodePair>{{0, 1}, {0, 2}});
  CHECK_THROWS_AS(tjoin(3, {{0, 1}, {1, 2}}, {0}), Error);
  CHECK_THROWS_AS(tjoin(4, {{0, 1}, {2, 3}}, {0, 2}), Error);
}

TEST_CASE("tjoin parity property") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = oracle::witnessed(7, 5, 1, 0, rng);
    std::vector<NodePair> edges;
    for (const auto& [p, c] : inst.supply) edges.push_back(p);
    std::vector<int> T;
    for (int v = 0; v < 7; ++v)
      if (rng() & 1) T.push_back(v);
    if (T.size() % 2) T.pop_back();
    auto J = tjoin(7, edges, T);
    std::set<NodePair> uniq(J.begin(), J.end());
    CHECK(uniq.size() == J.size());
    std::vector<int> deg(7, 0);
    for (auto e : J) {
      CHECK(inst.capacity(e.first, e.second) > 0);
      ++deg[e.first];
      ++deg[e.second];
    }
    for (int v = 0; v < 7; ++v)
      CHECK((deg[v] % 2 == 1) == (std::find(T.begin(), T.end(), v) != T.end()));
  }
}

TEST_CASE("verify routing") {
  auto inst = c4({{1, 3, 2}});
  Routing r;
  r.integral = true;
  r.add(0, 2, {0, 1, 2}, 1);
  r.add(0, 2, {0, 3, 2}, 1);
  auto ok = verify_routing(inst, r, 1);
  CHECK(ok.ok);
  CHECK(ok.max_congestion == 1);
  CHECK_FALSE(verify_routing(inst, r, Rational(1, 2)).ok);
  Routing short_r;
  short_r.add(0, 2, {0, 1, 2}, 1);
  auto bad = verify_routing(inst, short_r, 1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason.find("shortfall") != std::string::npos);
  Routing frac;
  frac.integral = true;
  frac.add(0, 2, {0, 1, 2}, Rational(3, 2));
  frac.add(0, 2, {0, 3, 2}, Rational(1, 2));
  CHECK_FALSE(verify_routing(inst, frac, 2).ok);
}

TEST_CASE("verify routing verdict is scale invariant") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = oracle::witnessed(5, 3, 2, 4, rng);
    auto r = exhaustive_integral_route(inst, 1);
    REQUIRE(r.has_value());
    Rational q(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 4));
    Rational alpha(1 + static_cast<long>(rng() % 3), 2);
    bool base = verify_routing(inst, *r, alpha).ok;
    CHECK(base == oracle::routes(inst, *r, alpha));
    auto scaled = inst.scaled_supply(q).scaled_demand(q);
    CHECK(verify_routing(scaled, r->scaled(q), alpha).ok == base);
  }
}

TEST_CASE("integral optimum of the crossing four-cycle is 2") {
  auto inst = c4({{1, 3, 1}, {2, 4, 1}});
  CHECK_FALSE(exhaustive_integral_route(inst, 1).has_value());
  auto two = exhaustive_integral_route(inst, 2);
  REQUIRE(two.has_value());
  CHECK(oracle::routes(inst, *two, 2));
  CHECK(integral_optimum(inst, 4) == 2);
}

TEST_CASE("reduce_basic examples") {
  // Path a-b-c with demand ac.
  auto path = build(3, {{1, 2, 1}, {2, 3, 1}}, {{1, 3, 1}});
  auto res = reduce_basic(path);
  CHECK(res.reduced.demand.empty());
  CHECK(res.reduced.supply.empty());
  CHECK(res.trace.steps.front().kind == StepKind::OneCut);
  auto lifted = res.trace.lift(Routing{});
  CHECK(oracle::routes(path, lifted, 1));

  // Demand parallel to an equal supply edge disappears together with it.
  auto par = build(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}, {{1, 2, 1}});
  auto pres = reduce_basic(par, {false, false, false});
  CHECK(pres.reduced.demand.empty());
  CHECK(pres.reduced.capacity(0, 1) == 0);

  // Crossing four-cycle is already reduced.
  auto crossing = c4({{1, 3, 1}, {2, 4, 1}});
  auto cres = reduce_basic(crossing);
  CHECK(cres.trace.empty());
  CHECK(cres.reduced.supply == crossing.supply);
  CHECK(cres.reduced.demand == crossing.demand);

  CHECK_THROWS_AS(reduce_basic(c4({{1, 3, 1}, {2, 4, 2}})), Error);
}

TEST_CASE("reduce_basic preserves cut condition, parity and routability") {
  std::mt19937_64 rng(17);
  int lifted_checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    auto inst = oracle::witnessed(n, 2 + static_cast<int>(rng() % 3), 2, 5, rng);
    ReduceOptions opt;
    opt.contract = trial % 3 == 0;
    auto res = reduce_basic(inst, opt);
    CHECK(oracle::cut_ok(res.reduced));
    if (is_eulerian(inst)) CHECK(is_eulerian(res.reduced));
    auto replayed = res.trace.replay(inst);
    CHECK(replayed.supply == res.reduced.supply);
    CHECK(replayed.demand == res.reduced.demand);
    // Every demand of the reduced instance lies inside one reported block.
    for (const auto& [p, d] : res.reduced.demand) {
      bool inside = false;
      for (const auto& b : res.blocks)
        inside = inside || (std::binary_search(b.begin(), b.end(), p.first) &&
                            std::binary_search(b.begin(), b.end(), p.second));
      CHECK(inside);
    }
    auto r = exhaustive_integral_route(res.reduced, 1);
    if (!r) continue;
    auto lifted = res.trace.lift(*r);
    CHECK(oracle::routes(inst, lifted, 1));
    ++lifted_checked;
  }
  CHECK(lifted_checked > 40);
}
