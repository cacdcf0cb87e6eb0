#pragma once

#include "multiflow/core.hpp"

#include <optional>
#include <vector>

namespace multiflow {

// Hubs s < t and the spokes, each adjacent to exactly s and t in the supply
// graph; an s-t supply edge is allowed.
struct K2mShape {
  int s = -1;
  int t = -1;
  std::vector<int> spokes;
};

// First hub pair in lexicographic order that fits.  Throws NotK2mShape.
K2mShape k2m_shape(const Instance& inst);

struct K2mNormalized {
  Instance instance;
  K2mShape shape;
  ReductionTrace trace;
};

// Removes demand parallel to supply and moves spoke slack onto the hub edge
// until every spoke cut is tight.  Throws NotK2mShape, NonIntegral,
// NotEulerian, Violated.
K2mNormalized normalize_k2m(const Instance& inst);

// Two-colouring of the spoke-to-spoke demand graph, when it is bipartite.
std::optional<std::pair<std::vector<int>, std::vector<int>>> spoke_bipartition(const Instance& inst,
                                                                                 const K2mShape& shape);

// Integral congestion-1 routing using paths of at most two edges.  Throws
// NotBipartite, plus the normalization errors.
Routing route_path_bipartite(const Instance& inst);

enum class SpokeRole { Keep, MergeS, MergeT, Delete };
const char* role_name(SpokeRole r);

struct OddMinorWitness {
  int p = 0;
  std::vector<SpokeRole> roles;  // per spoke, in shape order
  std::vector<int> cycle;        // kept spokes in cycle order
  NodePair hub_demand;           // demand pair that becomes the s-t demand
};

// Exhaustive search for an odd K_{2p} minor.  Throws TooLarge above 12 spokes.
std::optional<OddMinorWitness> detect_odd_k2p(const Instance& inst);

struct K2mResult {
  std::optional<Routing> routing;
  std::optional<OddMinorWitness> witness;
  int pushes = 0;
  bool small_case = false;  // finished by exhaustive search
};

// Routing when pushes succeed; otherwise the odd minor that blocks them.
K2mResult route_k2m(const Instance& inst);

}  // namespace multiflow
