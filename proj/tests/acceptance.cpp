// Acceptance run: one PASS/FAIL line per criterion, with the wall time and
// the limit it is held to.
#include "oracles.hpp"

#include "multiflow/compliance.hpp"
#include "multiflow/core.hpp"
#include "multiflow/error.hpp"
#include "multiflow/flowlp.hpp"
#include "multiflow/generators.hpp"
#include "multiflow/k2m.hpp"
#include "multiflow/lbgen.hpp"
#include "multiflow/reroute.hpp"
#include "multiflow/router.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace multiflow;

namespace {

// Failures collected while a criterion runs.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++count;
  }
  int count = 0;
};

// Instances seen by the other criteria, for the duality check.
std::vector<std::pair<std::string, Instance>> touched;

void touch(const std::string& label, const Instance& inst) {
  if (!inst.demand.empty()) touched.push_back({label, inst});
}

bool routes_at(const Instance& inst, const Routing& r, const Rational& alpha) {
  return verify_routing(inst, r, alpha).ok && oracle::routes(inst, r, alpha);
}

int failed_criteria = 0;

template <class F>
void criterion(int id, const std::string& title, double limit_s, F&& body) {
  Check c;
  std::string note;
  auto t0 = std::chrono::steady_clock::now();
  try {
    note = body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < limit_s, "over the time limit");
  bool ok = c.count == 0;
  failed_criteria += !ok;
  std::printf("%s %2d %s [%.2f s / %.0f s]%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs, limit_s,
              note.empty() ? "" : " ", note.c_str());
  for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
  std::fflush(stdout);
}

std::string str(const Rational& q) { return to_string(q); }

// K_{2m} instance: hubs 0, 1, spokes 2..m+1.
Instance k2m_instance(const std::vector<std::pair<int, int>>& caps, int st_cap,
                      const std::vector<std::tuple<int, int, int>>& demand) {
  Instance inst;
  inst.add_node("s");
  inst.add_node("t");
  for (std::size_t i = 1; i <= caps.size(); ++i) inst.add_node("v" + std::to_string(i));
  for (std::size_t i = 0; i < caps.size(); ++i) {
    inst.add_supply(0, 2 + i, caps[i].first);
    inst.add_supply(2 + i, 1, caps[i].second);
  }
  if (st_cap > 0) inst.add_supply(0, 1, st_cap);
  for (auto [a, b, d] : demand) inst.add_demand(a, b, d);
  return inst;
}

std::string lb_exactness(Check& c) {
  const Rational want[] = {Rational(4, 3), Rational(13, 9), Rational(40, 27)};
  std::ostringstream os;
  for (int k = 1; k <= 3; ++k) {
    auto fam = generate_lb(4, k);
    Rational lb = std_lower_bound(fam.instance);
    c.expect(lb == want[k - 1], "level " + std::to_string(k) + " gave " + str(lb));
    c.expect(fam.expected == want[k - 1], "expected field at level " + std::to_string(k));
    os << (k > 1 ? ", " : "") << str(lb);
    if (k <= 2) touch("lb level " + std::to_string(k), fam.instance);
  }
  return os.str();
}

std::string lp_tightness(Check& c) {
  auto fam = generate_lb(4, 1);
  auto lp = min_congestion_flow(fam.instance);
  c.expect(lp.congestion == Rational(4, 3), "lambda* = " + str(lp.congestion));
  c.expect(dual_bound(fam.instance, lp.lengths) == lp.congestion, "dual certificate differs");
  c.expect(routes_at(fam.instance, lp.routing, lp.congestion), "LP routing does not verify");
  return "lambda* = " + str(lp.congestion);
}

std::string gap_convergence(Check& c) {
  Rational prev = 0;
  for (int k = 1; k <= 12; ++k) {
    Rational g = expected_gap(4, k);
    c.expect(g > prev, "not increasing at level " + std::to_string(k));
    prev = g;
  }
  c.expect(prev > Rational(2) - Rational(2, 4) - Rational(1, 1000), "level 12 gap " + str(prev));
  c.expect(prev < Rational(3, 2), "level 12 gap exceeds the limit");
  return "gap(4,12) = " + str(prev);
}

std::string congestion5(Check& c) {
  Rational worst = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenOptions opt;
    opt.nodes = 4 + static_cast<int>(seed % 9);
    opt.units = 2 + static_cast<int>(seed % 8);
    opt.eulerian = seed % 2 == 0;
    auto w = gen_witnessed(10000 + seed, "sp", opt);
    c.expect(w.instance.num_nodes() <= 12, "instance too large");
    c.expect(oracle::routes(w.instance, w.witness, 1), "generator witness fails");
    auto res = route_sp_congestion5(w.instance);
    c.expect(res.routing.amounts_integral(), "fractional routing, seed " + std::to_string(seed));
    c.expect(routes_at(w.instance, res.routing, 5), "over congestion 5, seed " + std::to_string(seed));
    worst = std::max(worst, res.congestion);
    touch("sp seed " + std::to_string(seed), w.instance);
  }
  int compliant = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenOptions opt;
    opt.nodes = 5 + static_cast<int>(seed % 8);
    opt.units = 2 + static_cast<int>(seed % 7);
    opt.eulerian = true;
    auto w = gen_witnessed(20000 + seed, seed % 2 ? "sp-compliant" : "sp-fully-compliant", opt);
    c.expect(is_eulerian(w.instance), "generator ignored the Eulerian flag");
    auto rec = recognize_sp(w.instance);
    for (const auto& [p, cl] : classify_demands(w.instance, rec.tree))
      c.expect(cl != Compliance::NonCompliant, "non-compliant demand in compliant family");
    auto r = route_compliant(w.instance);
    c.expect(r.amounts_integral() && routes_at(w.instance, r, 1), "compliant router over 1");
    auto p5 = route_sp_congestion5(w.instance);
    c.expect(routes_at(w.instance, p5.routing, 1), "pipeline over 1 on a compliant instance");
    ++compliant;
  }
  return "worst " + str(worst) + " over 200; " + std::to_string(compliant) + " compliant at 1";
}

int max_hops(const Routing& r) {
  int h = 0;
  for (const auto& [p, list] : r.flows)
    for (const auto& pf : list) h = std::max(h, static_cast<int>(pf.path.size()) - 1);
  return h;
}

std::string path_bipartite(Check& c) {
  int largest = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenOptions opt;
    opt.spokes = 2 + static_cast<int>(seed % 7);
    opt.units = 3 + static_cast<int>(seed % 10);
    opt.eulerian = true;
    auto w = gen_witnessed(30000 + seed, "k2m-bipartite", opt);
    int m = static_cast<int>(k2m_shape(w.instance).spokes.size());
    largest = std::max(largest, m);
    c.expect(m <= 8, "more than 8 spokes");
    c.expect(is_eulerian(w.instance), "not Eulerian, seed " + std::to_string(seed));
    auto r = route_path_bipartite(w.instance);
    c.expect(r.amounts_integral() && routes_at(w.instance, r, 1), "over congestion 1, seed " + std::to_string(seed));
    c.expect(max_hops(r) <= 2, "path longer than 2, seed " + std::to_string(seed));
    touch("k2m seed " + std::to_string(seed), w.instance);
  }
  return "100 instances, up to " + std::to_string(largest) + " spokes";
}

// Spoke capacities are nondecreasing codes (spoke permutation symmetry); every
// pair among hubs and spokes takes demand 0, 1 or 2.
std::string odd_minor_dichotomy(Check& c) {
  long candidates = 0, feasible = 0, blocked = 0;
  for (int m = 2; m <= 3; ++m) {
    int n = m + 2;
    std::vector<NodePair> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    std::vector<int> codes(m, 0);
    std::function<void(int, int)> caps_from = [&](int i, int lo) {
      if (i < m) {
        for (int code = lo; code < 4; ++code) {
          codes[i] = code;
          caps_from(i + 1, code);
        }
        return;
      }
      std::vector<std::pair<int, int>> caps;
      for (int code : codes) caps.push_back({1 + (code & 1), 1 + (code >> 1 & 1)});
      for (int st = 0; st <= 2; ++st) {
        std::vector<int> base(n, 0);
        for (int i = 0; i < m; ++i) {
          base[0] += caps[i].first;
          base[1] += caps[i].second;
          base[2 + i] += caps[i].first + caps[i].second;
        }
        base[0] += st;
        base[1] += st;
        long total = 1;
        for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
        for (long code = 1; code < total; ++code) {
          ++candidates;
          std::vector<int> deg = base;
          std::vector<std::tuple<int, int, int>> dem;
          long x = code;
          for (const auto& p : pairs) {
            int d = static_cast<int>(x % 3);
            x /= 3;
            if (!d) continue;
            deg[p.first] += d;
            deg[p.second] += d;
            dem.push_back({p.first, p.second, d});
          }
          if (std::any_of(deg.begin(), deg.end(), [](int v) { return v % 2; })) continue;
          auto inst = k2m_instance(caps, st, dem);
          if (!oracle::cut_ok(inst)) continue;
          ++feasible;
          bool routable = oracle::unit_routable(inst);
          auto res = route_k2m(inst);
          auto w = detect_odd_k2p(inst);
          bool agree = res.routing.has_value() == !w.has_value() && res.routing.has_value() == routable;
          if (!agree) {
            std::ostringstream os;
            os << "disagreement on m=" << m << " st=" << st << " code=" << code;
            c.expect(false, os.str());
          }
          if (res.routing) c.expect(routes_at(inst, *res.routing, 1), "k2m routing over 1");
          if (w) {
            ++blocked;
            c.expect(w->p % 2 == 1 && w->p >= 3, "witness with even p");
          }
        }
      }
    };
    caps_from(0, 0);
  }
  c.expect(blocked > 0 && blocked < feasible, "enumeration misses one side of the dichotomy");

  Instance odd = k2m_instance({{1, 1}, {1, 1}, {1, 1}}, 0, {{0, 1, 1}, {2, 3, 1}, {3, 4, 1}, {4, 2, 1}});
  auto w = detect_odd_k2p(odd);
  c.expect(w.has_value() && w->p == 3, "odd K6 instance gives no p=3 witness");
  auto res = route_k2m(odd);
  c.expect(!res.routing && res.witness && res.witness->p == 3, "router does not report the odd K6 witness");
  std::ostringstream os;
  os << candidates << " candidates, " << feasible << " feasible, " << blocked << " blocked";
  return os.str();
}

std::string rerouting_lemma(Check& c) {
  std::mt19937_64 rng(77);
  int trials = 0, with_connectors = 0;
  while (trials < 200) {
    int n = 3 + static_cast<int>(rng() % 8);
    auto inst = oracle::witnessed(n, n / 2 + 1, 2, 1 + static_cast<int>(rng() % 6), rng);
    if (inst.demand.empty()) continue;
    NodeMapping f(n);
    for (int v = 0; v < n; ++v) f[v] = static_cast<int>(rng() % n);
    auto mp = map_demands(inst.demand, f);
    Rational gamma = 0;
    if (!mp.connectors.empty()) {
      gamma = ceil_of(min_congestion_flow(inst.with_demands(mp.connectors)).congestion);
      ++with_connectors;
    }
    auto rc = check_rerouting_lemma(inst, f, gamma);
    c.expect(rc.holds, "counterexample at trial " + std::to_string(trials));
    c.expect(oracle::cut_ok(inst.scaled_supply(gamma + 1).with_demands(mp.core)), "independent recount fails");
    ++trials;
  }
  return std::to_string(trials) + " trials, " + std::to_string(with_connectors) + " with connectors";
}

std::string k_faces(Check& c) {
  Rational worst1 = 0, worst2 = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenOptions opt;
    opt.rows = 3 + static_cast<int>(seed % 2);
    opt.cols = 4;
    opt.units = 3 + static_cast<int>(seed % 4);
    auto w = gen_witnessed(40000 + seed, "planar-outer", opt);
    c.expect(oracle::routes(w.instance, w.witness, 1), "generator witness fails");
    auto res = route_k_faces(w.instance, {w.instance.faces[0]});
    c.expect(res.routing.amounts_integral() && routes_at(w.instance, res.routing, 5),
             "outer face over 5, seed " + std::to_string(seed));
    worst1 = std::max(worst1, res.congestion);
    touch("planar-outer seed " + std::to_string(seed), w.instance);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenOptions opt;
    opt.units = 3 + static_cast<int>(seed % 4);
    auto w = gen_witnessed(50000 + seed, "planar-2face", opt);
    c.expect(oracle::routes(w.instance, w.witness, 1), "generator witness fails");
    auto res = route_k_faces(w.instance, {w.instance.faces[0], {5, 6, 9, 10}});
    c.expect(res.routing.amounts_integral() && routes_at(w.instance, res.routing, 10),
             "two faces over 10, seed " + std::to_string(seed));
    worst2 = std::max(worst2, res.congestion);
    touch("planar-2face seed " + std::to_string(seed), w.instance);
  }
  return "worst " + str(worst1) + " (1 face), " + str(worst2) + " (2 faces)";
}

std::string k_shell(Check& c) {
  Rational worst = 0;
  int inner = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenOptions opt;
    opt.rows = 4;
    opt.cols = 5;
    opt.units = 4 + static_cast<int>(seed % 3);
    auto w = gen_witnessed(60000 + seed, "planar-kshell", opt);
    c.expect(w.instance.num_nodes() <= 20, "more than 20 nodes");
    c.expect(oracle::routes(w.instance, w.witness, 1), "generator witness fails");
    auto res = route_kshell(w.instance, 2);
    c.expect(res.routing.amounts_integral() && routes_at(w.instance, res.routing, 36),
             "over 36, seed " + std::to_string(seed));
    worst = std::max(worst, res.congestion);
    for (const auto& lv : res.ledger) {
      c.expect(lv.recursive + lv.peeled + lv.connectors <= lv.bound, "ledger exceeds its bound");
      if (lv.k == 2) {
        ++inner;
        c.expect(lv.bound == 36, "level-2 bound is not 36");
      }
    }
    touch("planar-kshell seed " + std::to_string(seed), w.instance);
  }
  Rational p = 6;
  for (int k = 2; k <= 8; ++k, p *= 6) c.expect(4 * p + 12 <= p * 6, "ledger arithmetic at k=" + std::to_string(k));
  c.expect(inner > 0, "no instance exercised the recursive level");
  return "worst " + str(worst) + ", " + std::to_string(inner) + " recursive levels";
}

std::string duality(Check& c) {
  for (const auto& [label, inst] : touched) {
    auto lp = min_congestion_flow(inst);
    Rational dual = dual_bound(inst, lp.lengths), lb = std_lower_bound(inst);
    c.expect(dual == lp.congestion, label + ": dual " + str(dual) + " vs " + str(lp.congestion));
    c.expect(lb <= dual, label + ": std " + str(lb) + " > " + str(dual));
  }
  auto c4 = oracle::build(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}}, {{1, 3, 1}, {2, 4, 1}});
  auto lp = min_congestion_flow(c4);
  c.expect(lp.congestion == 1, "C4 fractional optimum " + str(lp.congestion));
  auto opt = integral_optimum(c4, 3);
  c.expect(opt && *opt == 2, "C4 integral optimum is not 2");
  c.expect(!oracle::unit_routable(c4) && oracle::unit_routable(c4.scaled_supply(2)),
           "independent search disagrees on the C4 integral optimum");
  return std::to_string(touched.size()) + " instances; C4: 1 fractional, 2 integral";
}

}  // namespace

int main() {
  criterion(1, "lower-bound family exactness (m=4, k=1..3)", 5, lb_exactness);
  criterion(2, "LP tightness at level 1", 10, lp_tightness);
  criterion(3, "gap convergence", 1, gap_convergence);
  criterion(4, "congestion 5 on series-parallel instances", 300, congestion5);
  criterion(5, "path-bipartite router", 30, path_bipartite);
  criterion(6, "odd-minor dichotomy (m <= 3)", 120, odd_minor_dichotomy);
  criterion(7, "rerouting lemma", 60, rerouting_lemma);
  criterion(8, "k-faces routing", 120, k_faces);
  criterion(9, "2-shell routing", 180, k_shell);
  criterion(10, "duality sanity", 120, duality);
  std::printf("%d of 10 criteria failed\n", failed_criteria);
  return failed_criteria ? 1 : 0;
}
