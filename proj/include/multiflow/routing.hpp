#pragma once

#include "multiflow/instance.hpp"

#include <vector>

namespace multiflow {

struct PathFlow {
  std::vector<int> path;
  Rational amount;
};

// Per demand pair, a list of weighted paths.  Paths stored under key (a, b)
// with a < b always run from a to b.
struct Routing {
  std::map<NodePair, std::vector<PathFlow>> flows;
  // Claimed integrality; verify_routing checks it against the amounts.
  bool integral = false;

  void add(int a, int b, std::vector<int> path, const Rational& amount);
  void add_all(int a, int b, const std::vector<PathFlow>& pieces);
  Rational total(int a, int b) const;
  // Removes `amount` of flow for pair {a, b} and returns it oriented a -> b.
  // Single-edge paths are taken first.  Throws MissingCoverage on shortfall.
  std::vector<PathFlow> draw(int a, int b, const Rational& amount);
  void merge(const Routing& other);
  EdgeMap loads() const;
  bool amounts_integral() const;
  Rational max_congestion(const Instance& inst) const;
  Routing scaled(const Rational& factor) const;
};

// Removes cycles from a walk, keeping the first visit of each node.
std::vector<int> shortcut(const std::vector<int>& walk);

// Pairs the pieces of consecutive segments by amount (all segments must carry
// the same total) and concatenates each tuple into a shortcut path.
std::vector<PathFlow> concatenate(const std::vector<std::vector<PathFlow>>& segments);

// Replaces up to `limit` units of flow that use the hop a-b by the detour
// path (which runs from a to b).  Returns the amount rerouted.
Rational substitute_hop(Routing& r, int a, int b, const std::vector<int>& detour, const Rational& limit);

}  // namespace multiflow
