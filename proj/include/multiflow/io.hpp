#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"
#include "multiflow/spgraph.hpp"

#include <json.hpp>
#include <string>

namespace multiflow {

using Json = nlohmann::json;

// Rationals travel as strings "p/q" (or "p"); plain JSON integers are also
// accepted on input.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {"nodes": [...], "supply": [[u, v, "c"]], "demand": [[u, v, "d"]],
//  "embedding": [[...]]}.  Endpoints are node names; integer indices are also
// accepted on input.  Throws InvalidInput.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

// {"integral": bool, "routes": [{"demand": [u, v], "flows": [{"path": [...],
//  "amount": "p/q"}]}]}
Json routing_to_json(const Instance& inst, const Routing& r);
Routing routing_from_json(const Instance& inst, const Json& j);

// Nested {"op": "S"|"P"|"E", "terminals": [s, t], "children": [...]}; leaves
// also carry "capacity".
Json sptree_to_json(const Instance& inst, const SPTree& tree);

// Undirected DOT graph: supply pairs solid with their capacity, demand pairs
// dashed with their value.
std::string to_dot(const Instance& inst);

// Two-space indented JSON with sorted keys and a trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace multiflow
