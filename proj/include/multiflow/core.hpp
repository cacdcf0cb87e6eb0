#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"
#include "multiflow/trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace multiflow {

struct Cut {
  std::vector<int> side;
  Rational supply_across = 0;
  Rational demand_across = 0;
  Rational surplus = 0;
};

Cut make_cut(const Instance& inst, const std::vector<int>& side);
Rational surplus(const Instance& inst, const std::vector<int>& side);

// Brute-force node bound; MULTIFLOW_NODE_CAP overrides the default of 22.
int node_cap();

struct CutReport {
  bool holds = true;
  // A minimizing set (lexicographically smallest sorted node list among the
  // minimizers); empty side when the instance has fewer than two active nodes.
  Cut worst;
};

// Exhaustive surplus minimization over subsets of the active nodes.  Throws
// TooLarge above node_cap().
CutReport check_cut_condition(const Instance& inst);

// Minimum surplus over sets that separate a from b, restricted to sets made of
// active nodes.  Empty optional when no such set exists.
std::optional<Cut> min_separating_cut(const Instance& inst, int a, int b);

// For every listed pair, the minimum surplus over cuts that separate its two
// endpoints.  Pairs whose endpoints coincide are reported as +infinity (absent).
EdgeMap min_surplus_across(const Instance& inst, const std::vector<NodePair>& pairs);

bool is_eulerian(const Instance& inst);

struct PushResult {
  bool ok = false;
  Instance after;
  Cut witness;  // violated set of the pushed instance when !ok
};

// Moves one unit (integral instances) or the whole demand (otherwise) from
// x-y onto x-w and w-y and checks the cut condition of the result.
PushResult push_demand(const Instance& inst, int x, int y, int w);
Rational push_unit(const Instance& inst, int x, int y);

// Edge subset of `edges` whose odd-degree nodes are exactly T.
std::vector<NodePair> tjoin(int n, const std::vector<NodePair>& edges, const std::vector<int>& T);

struct VerifyReport {
  bool ok = false;
  std::string reason;
  Rational max_congestion = 0;
};

VerifyReport verify_routing(const Instance& inst, const Routing& routing, const Rational& alpha);

struct SearchOptions {
  std::size_t paths_per_pair = 64;
  std::uint64_t node_budget = 1u << 20;
  // Residual cut-condition pruning is only run on instances with at most this
  // many active nodes.
  int cut_prune_nodes = 10;
};

// Depth-first search over per-unit path choices for an integral routing with
// load <= floor(alpha * capacity).  Empty optional when no routing exists among
// the candidate paths; TooLarge when the node budget runs out.
std::optional<Routing> exhaustive_integral_route(const Instance& inst, const Rational& alpha,
                                                 const SearchOptions& opt = {});

// Smallest integer alpha in [1, max_alpha] admitting an integral routing.
std::optional<int> integral_optimum(const Instance& inst, int max_alpha, const SearchOptions& opt = {});

// Subinstance on a node subset: all nodes kept, only pairs inside the subset.
Instance restrict_to(const Instance& inst, const std::vector<int>& subset);

struct ReduceOptions {
  bool supply_slack = true;
  bool demand_slack = true;
  // Suppress demand-free nodes with exactly two supply neighbours.
  bool contract = false;
};

struct ReduceResult {
  Instance reduced;
  ReductionTrace trace;
  // Blocks of the reduced supply graph that carry demand, each a sorted node list.
  std::vector<std::vector<int>> blocks;
};

ReduceResult reduce_basic(const Instance& inst, const ReduceOptions& opt = {});

}  // namespace multiflow
