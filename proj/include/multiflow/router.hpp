#pragma once

#include "multiflow/core.hpp"
#include "multiflow/spgraph.hpp"

#include <cstdint>

namespace multiflow {

struct RouterStats {
  int pushes = 0;            // compliant pushes
  int measure_stalls = 0;    // pushes that did not lower the span measure
  int pipeline_pushes = 0;   // demands moved onto a 2-cut terminal
  int depth = 0;             // deepest split recursion
  int rings = 0;             // ring subproblems
  int tjoin_edges = 0;
  Rational fractional_congestion = 0;
};

struct RouterResult {
  Routing routing;
  Rational congestion = 0;
  ReductionTrace trace;
  RouterStats stats;
};

// True when the active supply nodes form one cycle of length >= 3.
bool is_ring(const Instance& inst);

// Integral congestion-1 routing on a capacitated cycle.  Throws NotRing,
// NonIntegral, NotEulerian, Violated, or TooLarge past `node_budget`.
Routing route_ring(const Instance& inst, std::uint64_t node_budget = 1u << 22);

// Integral congestion-1 routing when G + xy stays series-parallel for every
// demand xy.  Throws NotFullyCompliant, NotEulerian, NonIntegral, Violated.
Routing route_fully_compliant(const Instance& inst, RouterStats* stats = nullptr);

// Integral congestion-1 routing when every demand is compliant with respect
// to the decomposition tree (recognize_sp when none is given).  Throws
// NotCompliant, NotEulerian, NonIntegral, Violated.
Routing route_compliant(const Instance& inst, RouterStats* stats = nullptr);
Routing route_compliant(const Instance& inst, const SPTree& tree, RouterStats* stats = nullptr);

// Integral routing with congestion at most 5 on a series-parallel supply
// graph.  Throws Violated, NotSeriesParallel, NonIntegral.
RouterResult route_sp_congestion5(const Instance& inst);

}  // namespace multiflow
