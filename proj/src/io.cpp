#include "multiflow/io.hpp"

#include "multiflow/error.hpp"

#include <fstream>
#include <sstream>

namespace multiflow {

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "expected a rational, got " + j.dump());
}

namespace {

int node_from_json(const Instance& inst, const Json& j) {
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v < 0 || v >= inst.num_nodes()) throw Error(ErrorKind::InvalidInput, "node index out of range: " + j.dump());
    return v;
  }
  if (j.is_string()) {
    int v = inst.index_of(j.get<std::string>());
    if (v < 0) throw Error(ErrorKind::InvalidInput, "unknown node " + j.dump());
    return v;
  }
  throw Error(ErrorKind::InvalidInput, "expected a node name, got " + j.dump());
}

Json pairs_to_json(const Instance& inst, const EdgeMap& m) {
  Json out = Json::array();
  for (const auto& [p, w] : m) out.push_back({inst.name(p.first), inst.name(p.second), rational_to_json(w)});
  return out;
}

void pairs_from_json(Instance& inst, const Json& arr, bool supply) {
  if (!arr.is_array()) throw Error(ErrorKind::InvalidInput, "edge list must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::InvalidInput, "edge must be [u, v, value]: " + e.dump());
    int a = node_from_json(inst, e[0]), b = node_from_json(inst, e[1]);
    if (a == b) throw Error(ErrorKind::InvalidInput, "self-loop at " + inst.name(a));
    Rational w = rational_from_json(e[2]);
    if (w < 0) throw Error(ErrorKind::InvalidInput, "negative value on " + e.dump());
    if (supply)
      inst.add_supply(a, b, w);
    else
      inst.add_demand(a, b, w);
  }
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  j["nodes"] = inst.nodes;
  j["supply"] = pairs_to_json(inst, inst.supply);
  j["demand"] = pairs_to_json(inst, inst.demand);
  if (!inst.faces.empty()) {
    Json faces = Json::array();
    for (const auto& f : inst.faces) {
      Json face = Json::array();
      for (int v : f) face.push_back(inst.name(v));
      faces.push_back(face);
    }
    j["embedding"] = faces;
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nodes")) throw Error(ErrorKind::InvalidInput, "instance needs a \"nodes\" list");
  Instance inst;
  for (const auto& n : j.at("nodes")) {
    if (!n.is_string()) throw Error(ErrorKind::InvalidInput, "node names must be strings");
    if (inst.index_of(n.get<std::string>()) >= 0) throw Error(ErrorKind::InvalidInput, "duplicate node " + n.dump());
    inst.add_node(n.get<std::string>());
  }
  if (j.contains("supply")) pairs_from_json(inst, j.at("supply"), true);
  if (j.contains("demand")) pairs_from_json(inst, j.at("demand"), false);
  if (j.contains("embedding") && !j.at("embedding").is_null()) {
    for (const auto& f : j.at("embedding")) {
      std::vector<int> face;
      for (const auto& v : f) face.push_back(node_from_json(inst, v));
      inst.faces.push_back(face);
    }
  }
  return inst;
}

Json routing_to_json(const Instance& inst, const Routing& r) {
  Json routes = Json::array();
  for (const auto& [p, list] : r.flows) {
    Json flows = Json::array();
    for (const auto& pf : list) {
      Json path = Json::array();
      for (int v : pf.path) path.push_back(inst.name(v));
      flows.push_back({{"path", path}, {"amount", rational_to_json(pf.amount)}});
    }
    routes.push_back({{"demand", {inst.name(p.first), inst.name(p.second)}}, {"flows", flows}});
  }
  return {{"integral", r.integral}, {"routes", routes}};
}

Routing routing_from_json(const Instance& inst, const Json& j) {
  if (!j.is_object() || !j.contains("routes")) throw Error(ErrorKind::InvalidInput, "routing needs a \"routes\" list");
  Routing r;
  for (const auto& route : j.at("routes")) {
    const auto& d = route.at("demand");
    if (!d.is_array() || d.size() != 2) throw Error(ErrorKind::InvalidInput, "demand must be [u, v]");
    int a = node_from_json(inst, d[0]), b = node_from_json(inst, d[1]);
    for (const auto& f : route.at("flows")) {
      std::vector<int> path;
      for (const auto& v : f.at("path")) path.push_back(node_from_json(inst, v));
      if (path.empty()) throw Error(ErrorKind::InvalidInput, "empty path");
      // Paths may be written in either direction.
      if (path.front() == b && path.back() == a) std::reverse(path.begin(), path.end());
      if (path.front() != a || path.back() != b)
        throw Error(ErrorKind::InvalidInput, "path does not join its demand endpoints");
      r.add(a, b, path, rational_from_json(f.at("amount")));
    }
  }
  r.integral = j.value("integral", false);
  return r;
}

Json sptree_to_json(const Instance& inst, const SPTree& tree) {
  std::function<Json(int)> go = [&](int i) {
    const auto& nd = tree.nodes.at(i);
    Json j;
    j["op"] = nd.op == SPOp::Series ? "S" : nd.op == SPOp::Parallel ? "P" : "E";
    j["terminals"] = {inst.name(nd.s), inst.name(nd.t)};
    Json kids = Json::array();
    for (int c : nd.children) kids.push_back(go(c));
    j["children"] = kids;
    if (nd.op == SPOp::Edge) j["capacity"] = rational_to_json(nd.capacity);
    return j;
  };
  return go(tree.root);
}

std::string to_dot(const Instance& inst) {
  std::ostringstream os;
  auto q = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  os << "graph instance {\n";
  for (const auto& n : inst.nodes) os << "  " << q(n) << ";\n";
  for (const auto& [p, c] : inst.supply)
    os << "  " << q(inst.name(p.first)) << " -- " << q(inst.name(p.second)) << " [style=solid, label="
       << q(to_string(c)) << "];\n";
  for (const auto& [p, d] : inst.demand)
    os << "  " << q(inst.name(p.first)) << " -- " << q(inst.name(p.second)) << " [style=dashed, label="
       << q(to_string(d)) << "];\n";
  os << "}\n";
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace multiflow
