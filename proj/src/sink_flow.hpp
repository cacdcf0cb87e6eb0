// Single-sink max-flow shared by the node-cover and k-shell routers.
#pragma once

#include "multiflow/routing.hpp"

#include <map>
#include <vector>

namespace multiflow::detail {

struct SinkPath {
  int source = -1;
  std::vector<int> path;  // source -> first sink node reached
  Rational amount = 0;
};

// Sends supply_at[u] from every u into the sink set over undirected
// capacities; paths never pass through a sink node.  Throws Violated when the
// maximum flow falls short.
std::vector<SinkPath> single_sink_flow(int n, const EdgeMap& capacity, const std::map<int, Rational>& supply_at,
                                       const std::vector<bool>& is_sink);

// Hands the flow leaving each source to the listed (pair, endpoint, amount)
// requests in order, splitting paths as needed.
struct Request {
  NodePair demand;
  int from = -1;
  Rational amount = 0;
};
struct Assigned {
  NodePair demand;
  int from = -1;
  std::vector<int> path;
  Rational amount = 0;
};
std::vector<Assigned> assign_paths(const std::vector<SinkPath>& paths, const std::vector<Request>& requests);

}  // namespace multiflow::detail
