#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace multiflow {

struct GenOptions {
  int nodes = 8;    // sp families and ring
  int units = 6;    // routed demand units
  bool eulerian = true;
  int spokes = 4;   // k2m family
  int rows = 4;     // planar families
  int cols = 4;
};

// An instance built from the integral congestion-1 routing `witness` (empty
// for lb-family, whose instances need congestion above 1).
struct Witnessed {
  Instance instance;
  Routing witness;
};

// Families: sp, sp-compliant, sp-fully-compliant, ring, k2m-bipartite,
// planar-outer, planar-2face, planar-kshell, lb-family.  Throws InvalidInput
// on an unknown family.
Witnessed gen_witnessed(std::uint64_t seed, const std::string& family, const GenOptions& opt = {});
const std::vector<std::string>& witnessed_families();

// rows x cols grid with unit capacities; faces list the outer boundary first,
// then the unit squares.  Node (r, c) has index r * cols + c.
Instance grid_instance(int rows, int cols);

}  // namespace multiflow
