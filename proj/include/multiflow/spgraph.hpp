#pragma once

#include "multiflow/instance.hpp"
#include "multiflow/routing.hpp"

#include <array>
#include <optional>
#include <vector>

namespace multiflow {

enum class SPOp { Series, Parallel, Edge };

struct SPNode {
  SPOp op = SPOp::Edge;
  int s = -1;
  int t = -1;
  std::vector<int> children;
  Rational capacity = 0;  // leaves only
};

// Decomposition tree over instance node ids.  Series children chain from s to
// t; parallel children all run s -> t.
struct SPTree {
  std::vector<SPNode> nodes;
  int root = -1;

  int s() const { return nodes.at(root).s; }
  int t() const { return nodes.at(root).t; }
  // Leaf edges with capacities.
  EdgeMap evaluate() const;
  // Parent index per tree node (-1 at the root) and depth.
  std::vector<int> parents() const;
  std::vector<int> depths() const;
  // Sorted graph nodes spanned by each tree node.
  std::vector<std::vector<int>> spans() const;
  // Deepest tree node whose span contains both x and y.
  int lowest_common(int x, int y) const;
};

struct SPRecognition {
  bool ok = false;
  SPTree tree;
  // Four branch sets of a K4 minor when !ok.
  std::array<std::vector<int>, 4> branch_sets;
};

// Two-terminal decomposition of the supply graph with the given terminals.
std::optional<SPTree> decompose_with_terminals(const Instance& inst, int s, int t);

// Default terminals: the smallest active node and the first non-neighbour for
// which decomposition works, else its first neighbour.  Throws InvalidInput
// on an empty graph and NotTwoConnected on a disconnected or separable graph
// without a K4 minor.
SPRecognition recognize_sp(const Instance& inst);

// Series-parallel test by degree-two reduction on the simple supply graph.
bool has_k4_minor(int n, const std::vector<NodePair>& edges);

// (tail, head) per supply pair.
using Orientation = std::map<NodePair, NodePair>;
Orientation orient(const SPTree& tree);

struct StrictCut {
  bool ring = false;
  int u = -1;
  int v = -1;
};

// All strict 2-cuts in lexicographic order (empty for a ring).
std::vector<NodePair> strict_2cuts(const Instance& inst);
StrictCut find_strict_2cut(const Instance& inst);

struct Partition {
  int u = -1;
  int v = -1;
  std::vector<int> first;   // sorted, contains u and v
  std::vector<int> second;  // sorted, contains u and v
};

// Balanced partition for {u, v} with no demand crossing it, if any.
std::optional<Partition> choose_partition(const Instance& inst, int u, int v);

struct SplitResult {
  Instance first;   // receives `deficit` extra supply between u and v
  Instance second;  // receives `deficit` extra demand between u and v
  int u = -1;
  int v = -1;
  Rational deficit = 0;
};

SplitResult split_at_2cut(const Instance& inst, const Partition& part);

// Combines routings of the two sides: flow of the first side over the extra
// u-v supply is rerouted through the second side's u-v demand paths.
Routing lift_split(const Routing& first, const Routing& second, const SplitResult& split);

// Terminals of the lowest tree node spanning x and y when they separate x
// from y; nullopt when x, y are adjacent, form a 2-cut, or are not separated.
std::optional<NodePair> highest_2cut(const Instance& inst, const SPTree& tree, int x, int y);

// True when removing the listed nodes disconnects a from b in the supply graph.
bool separates(const Instance& inst, const std::vector<int>& removed, int a, int b);

// True when G - {u, v} has at least two components among the active nodes.
bool is_two_cut(const Instance& inst, int u, int v);

}  // namespace multiflow
