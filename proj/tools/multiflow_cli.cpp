#include "multiflow/compliance.hpp"
#include "multiflow/core.hpp"
#include "multiflow/error.hpp"
#include "multiflow/flowlp.hpp"
#include "multiflow/generators.hpp"
#include "multiflow/io.hpp"
#include "multiflow/k2m.hpp"
#include "multiflow/lbgen.hpp"
#include "multiflow/reroute.hpp"
#include "multiflow/router.hpp"
#include "multiflow/spgraph.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

using namespace multiflow;

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::string input, routing_file, out, mode = "sp5", embedding, cover, faces = "0", family = "sp";
  std::string verify = "ledger", emit, alpha = "1", witness_out;
  int m = 4, k = 1, nodes = 8, units = 6, spokes = 4, rows = 4, cols = 4;
  bool non_eulerian = false;
  bool json = false;
};

// Writes to --out when given, else stdout.
void emit_text(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_text_file(o.out, text);
}

Instance load(const Options& o) {
  Instance inst = instance_from_json(read_json_file(o.input));
  if (!o.embedding.empty()) {
    Json faces = read_json_file(o.embedding);
    Json wrapped = instance_to_json(inst);
    wrapped["embedding"] = faces.is_object() ? faces.at("embedding") : faces;
    inst = instance_from_json(wrapped);
  }
  return inst;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

Json names(const Instance& inst, const std::vector<int>& vs) {
  Json j = Json::array();
  for (int v : vs) j.push_back(inst.name(v));
  return j;
}

int cmd_check_cut(const Options& o) {
  Instance inst = load(o);
  auto rep = check_cut_condition(inst);
  Json j{{"holds", rep.holds},
         {"min_surplus", rational_to_json(rep.worst.surplus)},
         {"witness", names(inst, rep.worst.side)}};
  emit_text(o, dump(j));
  return rep.holds ? 0 : 1;
}

int cmd_euler(const Options& o) {
  Instance inst = load(o);
  std::vector<Rational> deg(inst.num_nodes(), 0);
  for (const auto& [p, c] : inst.supply) deg[p.first] += c, deg[p.second] += c;
  for (const auto& [p, d] : inst.demand) deg[p.first] += d, deg[p.second] += d;
  std::vector<int> odd;
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (!is_integer(deg[v] / 2)) odd.push_back(v);
  bool ok = is_eulerian(inst);
  emit_text(o, dump({{"eulerian", ok}, {"odd_nodes", names(inst, odd)}}));
  return ok ? 0 : 1;
}

int cmd_classify(const Options& o) {
  Instance inst = load(o);
  auto rec = recognize_sp(inst);
  if (!rec.ok) {
    Json sets = Json::array();
    for (const auto& b : rec.branch_sets) sets.push_back(names(inst, b));
    emit_text(o, dump({{"series_parallel", false}, {"k4_branch_sets", sets}}));
    return 1;
  }
  Json demands = Json::array();
  std::ostringstream table;
  table << std::left << std::setw(16) << "demand" << std::setw(17) << "label" << "witness\n";
  for (const auto& [p, c] : classify_demands(inst, rec.tree)) {
    std::string pair = inst.name(p.first) + "-" + inst.name(p.second), summary = "-";
    Json row{{"demand", {inst.name(p.first), inst.name(p.second)}}, {"class", compliance_name(c)}};
    if (c == Compliance::Compliant) {
      auto w = witness_2cut_on_path(inst, rec.tree, p.first, p.second);
      summary = "2-cut {" + inst.name(w.l) + "," + inst.name(w.r) + "} isolates " + inst.name(w.isolated);
      row["witness"] = {{"path", names(inst, w.path)},
                        {"cut", {inst.name(w.l), inst.name(w.r)}},
                        {"isolated", inst.name(w.isolated)}};
    } else if (c == Compliance::NonCompliant) {
      summary = "no directed path";
    }
    demands.push_back(row);
    table << std::setw(16) << pair << std::setw(17) << compliance_name(c) << summary << "\n";
  }
  if (o.json)
    emit_text(o, dump({{"series_parallel", true}, {"tree", sptree_to_json(inst, rec.tree)}, {"demands", demands}}));
  else
    emit_text(o, table.str());
  return 0;
}

Json stats_json(const RouterStats& s) {
  return {{"pushes", s.pushes},
          {"measure_stalls", s.measure_stalls},
          {"pipeline_pushes", s.pipeline_pushes},
          {"depth", s.depth},
          {"rings", s.rings},
          {"tjoin_edges", s.tjoin_edges},
          {"fractional_congestion", rational_to_json(s.fractional_congestion)}};
}

int cmd_route(const Options& o) {
  Instance inst = load(o);
  Json j{{"mode", o.mode}};
  Routing r;
  if (o.mode == "ring") {
    r = route_ring(inst);
  } else if (o.mode == "fully-compliant") {
    RouterStats st;
    r = route_fully_compliant(inst, &st);
    j["stats"] = stats_json(st);
  } else if (o.mode == "compliant") {
    RouterStats st;
    r = route_compliant(inst, &st);
    j["stats"] = stats_json(st);
  } else if (o.mode == "sp5") {
    auto res = route_sp_congestion5(inst);
    r = res.routing;
    j["stats"] = stats_json(res.stats);
  } else if (o.mode == "path-bipartite") {
    r = route_path_bipartite(inst);
  } else if (o.mode == "k2m") {
    auto res = route_k2m(inst);
    j["pushes"] = res.pushes;
    j["small_case"] = res.small_case;
    if (!res.routing) {
      const auto& w = *res.witness;
      auto shape = k2m_shape(inst);
      Json table = Json::array();
      std::cerr << "odd K_{2," << w.p << "} minor\nspoke  role\n";
      for (std::size_t i = 0; i < shape.spokes.size(); ++i) {
        table.push_back({{"spoke", inst.name(shape.spokes[i])}, {"role", role_name(w.roles[i])}});
        std::cerr << std::left << std::setw(6) << inst.name(shape.spokes[i]) << " " << role_name(w.roles[i]) << "\n";
      }
      j["witness"] = {{"p", w.p},
                      {"assignment", table},
                      {"cycle", names(inst, w.cycle)},
                      {"hub_demand", {inst.name(w.hub_demand.first), inst.name(w.hub_demand.second)}}};
      emit_text(o, dump(j));
      return 1;
    }
    r = *res.routing;
  } else if (o.mode == "nodecover") {
    std::vector<int> cover;
    if (o.cover.empty()) {
      cover = min_node_cover(inst);
    } else {
      std::stringstream ss(o.cover);
      for (std::string item; std::getline(ss, item, ',');) {
        int v = inst.index_of(item);
        if (v < 0) throw Error(ErrorKind::InvalidInput, "unknown cover node " + item);
        cover.push_back(v);
      }
    }
    auto res = route_via_node_cover(inst, cover);
    r = res.routing;
    j["cover"] = names(inst, cover);
    j["core_congestion"] = rational_to_json(res.core_congestion);
  } else if (o.mode == "kfaces") {
    std::vector<std::vector<int>> faces;
    for (int f : parse_ints(o.faces)) {
      if (f < 0 || f >= static_cast<int>(inst.faces.size()))
        throw Error(ErrorKind::EmbeddingMismatch, "face index " + std::to_string(f) + " is not in the embedding");
      faces.push_back(inst.faces[f]);
    }
    auto res = route_k_faces(inst, faces);
    r = res.routing;
    Json per = Json::array();
    for (const auto& c : res.per_face) per.push_back(rational_to_json(c));
    j["per_face"] = per;
  } else if (o.mode == "kshell") {
    auto res = route_kshell(inst, o.k);
    r = res.routing;
    Json ledger = Json::array();
    for (const auto& lv : res.ledger)
      ledger.push_back({{"k", lv.k},
                        {"scale", rational_to_json(lv.scale)},
                        {"recursive", rational_to_json(lv.recursive)},
                        {"peeled", rational_to_json(lv.peeled)},
                        {"connectors", rational_to_json(lv.connectors)},
                        {"bound", rational_to_json(lv.bound)}});
    j["ledger"] = ledger;
  } else {
    throw CLI::ValidationError("--mode", "unknown mode " + o.mode);
  }
  j["congestion"] = rational_to_json(r.max_congestion(inst));
  j["routing"] = routing_to_json(inst, r);
  emit_text(o, dump(j));
  return 0;
}

int cmd_flow(const Options& o) {
  Instance inst = load(o);
  auto lp = min_congestion_flow(inst);
  Json lengths = Json::array();
  for (const auto& [e, l] : lp.lengths) lengths.push_back({inst.name(e.first), inst.name(e.second), rational_to_json(l)});
  Json j{{"congestion", rational_to_json(lp.congestion)},
         {"std_lower_bound", rational_to_json(inst.demand.empty() ? Rational(0) : std_lower_bound(inst))},
         {"lengths", lengths},
         {"pivots", lp.pivots},
         {"columns", lp.columns},
         {"routing", routing_to_json(inst, lp.routing)}};
  if (!inst.demand.empty()) j["dual_bound"] = rational_to_json(dual_bound(inst, lp.lengths));
  emit_text(o, dump(j));
  return 0;
}

int cmd_gap_std(const Options& o) {
  Instance inst = load(o);
  emit_text(o, to_string(std_lower_bound(inst)) + "\n");
  return 0;
}

int cmd_gap_lower(const Options& o) {
  if (o.verify != "lp" && o.verify != "brute" && o.verify != "ledger")
    throw CLI::ValidationError("--verify", "expected lp, brute or ledger");
  std::ostringstream os;
  os << std::left << std::setw(6) << "level" << std::setw(10) << "C" << std::setw(10) << "D" << std::setw(12)
     << "std_lb" << std::setw(12) << "expected" << "match\n";
  bool all = true;
  LBFamily last;
  for (int level = 1; level <= o.k; ++level) {
    last = generate_lb(o.m, level);
    Rational c = last.instance.total_capacity(), lb = std_lower_bound(last.instance);
    bool match = lb == expected_gap(o.m, level);
    if (o.verify == "lp" && level == 1) match = match && min_congestion_flow(last.instance).congestion == lb;
    if (o.verify == "brute" && level == 1) match = match && check_cut_condition(last.instance).holds;
    all = all && match;
    os << std::setw(6) << level << std::setw(10) << to_string(c) << std::setw(10) << to_string(lb * c) << std::setw(12)
       << to_string(lb) << std::setw(12) << to_string(expected_gap(o.m, level)) << (match ? "yes" : "NO") << "\n";
  }
  if (!o.emit.empty()) write_text_file(o.emit, dump(instance_to_json(last.instance)));
  emit_text(o, os.str());
  return all ? 0 : 1;
}

int cmd_verify(const Options& o) {
  Instance inst = load(o);
  Json rj = read_json_file(o.routing_file);
  // Accepts the output of `route` as well as a bare routing.
  if (rj.is_object() && rj.contains("routing")) rj = rj.at("routing");
  Routing r = routing_from_json(inst, rj);
  Rational alpha = parse_rational(o.alpha);
  auto rep = verify_routing(inst, r, alpha);
  Json j{{"ok", rep.ok}, {"max_congestion", rational_to_json(rep.max_congestion)}};
  if (!rep.ok) j["reason"] = rep.reason;
  emit_text(o, dump(j));
  return rep.ok ? 0 : 1;
}

int cmd_dot(const Options& o) {
  emit_text(o, to_dot(load(o)));
  return 0;
}

int cmd_generate(const Options& o) {
  GenOptions g;
  g.nodes = o.nodes;
  g.units = o.units;
  g.eulerian = !o.non_eulerian;
  g.spokes = o.spokes;
  g.rows = o.rows;
  g.cols = o.cols;
  auto w = gen_witnessed(o.seed, o.family, g);
  if (!o.witness_out.empty()) write_text_file(o.witness_out, dump(routing_to_json(w.instance, w.witness)));
  emit_text(o, dump(instance_to_json(w.instance)));
  return 0;
}

int cmd_selftest(const Options& o) {
  int failed = 0;
  auto line = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    failed += !ok;
  };
  Instance c4;
  for (const char* n : {"a", "b", "c", "d"}) c4.add_node(n);
  for (int i = 0; i < 4; ++i) c4.add_supply(i, (i + 1) % 4, 1);
  c4.add_demand(0, 2, 1);
  c4.add_demand(1, 3, 1);
  line("c4 cut condition holds", check_cut_condition(c4).holds);
  line("c4 fractional optimum is 1", min_congestion_flow(c4).congestion == 1);
  line("c4 integral optimum is 2", integral_optimum(c4, 3) == 2);
  line("lower-bound level 1 is 4/3", std_lower_bound(generate_lb(4, 1).instance) == Rational(4, 3));
  auto w = gen_witnessed(o.seed, "sp", {});
  auto res = route_sp_congestion5(w.instance);
  line("witnessed sp instance routes within 5", verify_routing(w.instance, res.routing, 5).ok);
  Json round = instance_to_json(instance_from_json(instance_to_json(w.instance)));
  line("json round trip", round == instance_to_json(w.instance));
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiflow routing and cut-condition tools"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  auto input = [&](CLI::App* c) { c->add_option("instance", o.input, "instance JSON")->required(); };
  auto out = [&](CLI::App* c) { c->add_option("--out", o.out, "output file (default stdout)"); };
  auto embed = [&](CLI::App* c) { c->add_option("--embedding", o.embedding, "face list JSON"); };

  auto* check = app.add_subcommand("check-cut", "brute-force cut condition");
  input(check);
  out(check);
  embed(check);
  auto* euler = app.add_subcommand("euler-check", "parity of G + H");
  input(euler);
  out(euler);
  auto* classify = app.add_subcommand("classify", "series-parallel recognition and demand compliance");
  input(classify);
  out(classify);
  classify->add_flag("--json", o.json, "JSON instead of a table");
  auto* route = app.add_subcommand("route", "integral or fractional routing");
  input(route);
  out(route);
  embed(route);
  route->add_option("--mode", o.mode, "ring|fully-compliant|compliant|sp5|path-bipartite|k2m|nodecover|kfaces|kshell")
      ->capture_default_str();
  route->add_option("--cover", o.cover, "comma-separated cover node names (nodecover)");
  route->add_option("--faces", o.faces, "comma-separated face indices (kfaces)")->capture_default_str();
  route->add_option("--k", o.k, "number of layers (kshell)")->capture_default_str();
  auto* flow = app.add_subcommand("flow", "exact minimum-congestion flow");
  auto* flow_min = flow->add_subcommand("min-congestion", "LP optimum with dual lengths");
  flow->require_subcommand(1);
  input(flow_min);
  out(flow_min);
  auto* gap = app.add_subcommand("gap", "flow-cut gap bounds");
  gap->require_subcommand(1);
  auto* gap_std = gap->add_subcommand("std-lb", "demand-weighted hop distance over total capacity");
  input(gap_std);
  out(gap_std);
  auto* gap_lb = gap->add_subcommand("lower-bound", "recursive lower-bound family table");
  gap_lb->add_option("--m", o.m, "spokes per gadget")->capture_default_str();
  gap_lb->add_option("--k", o.k, "levels")->capture_default_str();
  gap_lb->add_option("--emit", o.emit, "write the last level's instance");
  gap_lb->add_option("--verify", o.verify, "lp|brute|ledger")->capture_default_str();
  out(gap_lb);
  auto* verify = app.add_subcommand("verify-routing", "check a routing against an instance");
  input(verify);
  verify->add_option("routing", o.routing_file, "routing JSON")->required();
  verify->add_option("--alpha", o.alpha, "allowed congestion")->capture_default_str();
  out(verify);
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  input(dot);
  out(dot);
  auto* gen = app.add_subcommand("generate", "witnessed random instance");
  gen->add_option("--family", o.family, "instance family")->capture_default_str();
  gen->add_option("--nodes", o.nodes)->capture_default_str();
  gen->add_option("--units", o.units)->capture_default_str();
  gen->add_option("--spokes", o.spokes)->capture_default_str();
  gen->add_option("--rows", o.rows)->capture_default_str();
  gen->add_option("--cols", o.cols)->capture_default_str();
  gen->add_flag("--non-eulerian", o.non_eulerian);
  gen->add_option("--witness-out", o.witness_out, "write the witness routing");
  out(gen);
  auto* self = app.add_subcommand("selftest", "quick built-in checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*check) return cmd_check_cut(o);
    if (*euler) return cmd_euler(o);
    if (*classify) return cmd_classify(o);
    if (*route) return cmd_route(o);
    if (*flow_min) return cmd_flow(o);
    if (*gap_std) return cmd_gap_std(o);
    if (*gap_lb) return cmd_gap_lower(o);
    if (*verify) return cmd_verify(o);
    if (*dot) return cmd_dot(o);
    if (*gen) return cmd_generate(o);
    if (*self) return cmd_selftest(o);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    std::cout << dump({{"error", kind_name(e.kind())}, {"detail", e.what()}});
    return 1;
  }
  return 2;
}
