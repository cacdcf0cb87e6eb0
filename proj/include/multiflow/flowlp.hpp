#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"

namespace multiflow {

struct FractionalFlow {
  Routing routing;
  Rational congestion = 0;
  // Optimal dual edge lengths, normalized so that sum of capacity * length is 1.
  EdgeMap lengths;
  int pivots = 0;
  int columns = 0;
};

// Exact minimum-congestion concurrent flow.  Throws NoPath when a demand pair
// is disconnected and TooLarge when the pivot limit is exceeded.
FractionalFlow min_congestion_flow(const Instance& inst, int pivot_limit = 200000);

// Shortest-path distances between demand endpoints under the given lengths
// (absent edges count as length 0).
EdgeMap demand_distances(const Instance& inst, const EdgeMap& lengths);

// Sum of demand times distance over sum of capacity times length.  Throws
// DegenerateLengths when the denominator vanishes.
Rational dual_bound(const Instance& inst, const EdgeMap& lengths);

// dual_bound with unit lengths.
Rational std_lower_bound(const Instance& inst);

// Amount of the pair's flow whose paths visit `node`.
Rational flow_through_node(const Routing& r, const NodePair& demand, int node);

}  // namespace multiflow
