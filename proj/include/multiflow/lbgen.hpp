#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"

namespace multiflow {

// Spoke scale 4c / (m (m - 2)); each spoke edge carries scale * (m - 1) / 2
// and each spoke pair demands scale.
Rational gadget_scale(int m, const Rational& c);

// K_{2,m} gadget between hubs "s" (index 0) and "t" (index 1) with a complete
// demand graph on the spokes.  Throws OddM and NonPositiveC.
Instance gadget(int m, const Rational& c);

// Each spoke demand split evenly between the two hubs; every edge is saturated.
Routing gadget_routing(int m, const Rational& c);

// Replaces every supply edge u-v of capacity c by a gadget with hubs u and v.
// New spokes are named "e<gadget id>/v<i>"; ids follow the edge order and
// continue the numbering of earlier rounds.
Instance amplify(const Instance& inst, int m);

struct LBFamily {
  Instance instance;
  int m = 4;
  int level = 0;
  Rational expected = 1;
};

// k-fold amplification of a unit edge with a parallel unit demand.  Throws
// ResourceCap past 100000 nodes.
LBFamily generate_lb(int m, int k);

// 1 + q + ... + q^k with q = (m - 2) / (2 (m - 1)).
Rational expected_gap(int m, int k);

}  // namespace multiflow
