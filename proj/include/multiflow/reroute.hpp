#pragma once

#include "multiflow/core.hpp"
#include "multiflow/routing.hpp"

#include <optional>
#include <set>
#include <vector>

namespace multiflow {

// f: V -> V as a vector indexed by node.
using NodeMapping = std::vector<int>;

struct MappedDemands {
  EdgeMap core;        // demand of u-v moved to f(u)-f(v); same-node pairs dropped
  EdgeMap connectors;  // u-f(u) carries all demand at u; u = f(u) dropped
};

MappedDemands map_demands(const EdgeMap& demand, const NodeMapping& f);

// Routes each unit of `demand` as connector u -> f(u), core f(u) -> f(v),
// connector f(v) -> v.  Throws MissingCoverage when either routing runs short.
Routing compose_routings(const EdgeMap& demand, const NodeMapping& f, const Routing& connectors,
                         const Routing& core);

struct RerouteCheck {
  bool holds = true;
  std::vector<int> counterexample;  // side S of a violated cut, when !holds
  bool charging_holds = true;       // core(S) <= demand(S) + connectors(S) on every S
  int subsets = 0;
};

// Brute-force check that the mapped core demand satisfies the cut condition in
// (gamma + 1) G.  Throws PreconditionFailed when the demand violates the cut
// condition in G or the connector demand needs more than gamma G, and TooLarge
// above 12 nodes.
RerouteCheck check_rerouting_lemma(const Instance& inst, const NodeMapping& f, const Rational& gamma);

// Flow piece sent from a demand endpoint to the cover.
struct ConnectorPiece {
  NodePair demand;  // original demand pair
  int from = -1;    // endpoint outside the cover
  std::vector<int> path;  // from -> landing node in the cover
  Rational amount = 0;
};

struct NodeCoverReduction {
  Instance core;  // supply 2G, demands among the cover nodes
  std::vector<ConnectorPiece> connectors;
  // Landing nodes and amounts per endpoint outside the cover.
  std::map<int, std::vector<std::pair<int, Rational>>> targets;
};

// Single-sink max-flow from the endpoints outside `cover` into the cover.
// Throws NotACover, Violated.
NodeCoverReduction node_cover_reduce(const Instance& inst, const std::vector<int>& cover);

// Combines connector pieces with a routing of the reduced core demand.
Routing compose_cover(const Instance& inst, const NodeCoverReduction& red, const Routing& core_routing);

struct CoverRouting {
  Routing routing;
  Rational congestion = 0;
  Rational core_congestion = 0;  // fractional optimum of the core on 2G
};

// Node-cover reduction, exact LP on the core, composition.
CoverRouting route_via_node_cover(const Instance& inst, const std::vector<int>& cover);

// Smallest node cover of the demand graph by exhaustive search (ties by
// lexicographic order).  Throws TooLarge above 20 demand endpoints.
std::vector<int> min_node_cover(const Instance& inst);

// Planar layers by repeated outer-face removal, using inst.faces.
struct PlanarLayers {
  std::vector<std::vector<int>> layers;  // layers[0] is the outer face
  std::vector<int> layer_of;             // 1-based; 0 when never reached
};

// Throws EmbeddingMismatch unless every face step is a supply pair, every
// supply pair borders exactly two face sides, and Euler's formula holds.
void validate_embedding(const Instance& inst);
PlanarLayers planar_layers(const Instance& inst);

enum class OSMode { Fractional, IntegralOn2G, IntegralIfEulerian };

// Single-face oracle.  IntegralOn2G returns an integral routing with loads at
// most twice the capacities.  Throws NotSingleFace, Violated, NotEulerian,
// TooLarge (more than 20 active nodes in the integral modes).
Routing os_oracle(const Instance& inst, const std::vector<int>& face, OSMode mode);

struct FacesResult {
  Routing routing;
  Rational congestion = 0;
  std::vector<Rational> per_face;  // congestion of each face's share
};

// Demands grouped by the first listed face holding an endpoint; each group
// goes through the node-cover reduction and the single-face oracle on 2G.
// Throws UncoveredDemand, Violated, NonIntegral.
FacesResult route_k_faces(const Instance& inst, const std::vector<std::vector<int>>& faces);

struct ShellLevel {
  int k = 0;
  Rational scale = 1;       // the level routes in scale * G
  Rational recursive = 0;   // congestion of the inner call, relative to G
  Rational peeled = 0;      // demands mostly avoiding the outer layers
  Rational connectors = 0;  // paths into the outer layers
  Rational bound = 0;       // scale * 6^k
};

struct ShellResult {
  Routing routing;
  Rational congestion = 0;
  std::vector<ShellLevel> ledger;
};

// Integral routing at congestion at most 6^k when every demand touches the
// outer k layers and the demands are fractionally routable.  Throws
// NotFractionallyRoutable, EmbeddingMismatch, UncoveredDemand, NonIntegral.
ShellResult route_kshell(const Instance& inst, int k);

}  // namespace multiflow
