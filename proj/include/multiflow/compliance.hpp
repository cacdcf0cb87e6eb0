#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/spgraph.hpp"

#include <map>
#include <vector>

namespace multiflow {

enum class Compliance { FullyCompliant, Compliant, NonCompliant };

const char* compliance_name(Compliance c);

// Node pairs reachable along the orientation, as a dense matrix.
std::vector<std::vector<bool>> directed_reach(int n, const Orientation& o);

// Throws NotTwoConnected when the supply graph is not 2-connected.
Compliance classify_edge(const Instance& inst, const SPTree& tree, int x, int y);

// Label of every demand pair.
std::map<NodePair, Compliance> classify_demands(const Instance& inst, const SPTree& tree);

// A directed s-t path through u and v with a 2-cut {l, r} on it.  `r` lies
// strictly between u and v on the path; `l` lies on the far side of the
// isolated endpoint (possibly s or t).  The component of the isolated endpoint
// in G - {l, r} contains neither the other endpoint nor s nor t.
struct TechnicalWitness {
  std::vector<int> path;
  int l = -1;
  int r = -1;
  int isolated = -1;
};

// Throws NotApplicable unless u-v is compliant but not fully compliant.
TechnicalWitness witness_2cut_on_path(const Instance& inst, const SPTree& tree, int u, int v);

// Recheck of the witness conditions above.
bool witness_holds(const Instance& inst, const SPTree& tree, int u, int v, const TechnicalWitness& w);

}  // namespace multiflow
