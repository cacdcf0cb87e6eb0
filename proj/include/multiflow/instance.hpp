#pragma once

#include "multiflow/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace multiflow {

using NodePair = std::pair<int, int>;
using EdgeMap = std::map<NodePair, Rational>;

inline NodePair key(int a, int b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }

// Supply graph G and demand graph H over one labelled node set.  Parallel
// copies are merged into a single capacitated (or demand-weighted) pair and
// zero-valued pairs are never stored.
struct Instance {
  std::vector<std::string> nodes;
  EdgeMap supply;
  EdgeMap demand;
  // Optional planar embedding: face boundaries as cyclic node sequences, the
  // first face being the outer one.
  std::vector<std::vector<int>> faces;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int index_of(const std::string& name) const;
  int add_node(const std::string& name);

  void add_supply(int a, int b, const Rational& w);
  void add_demand(int a, int b, const Rational& w);
  void set_supply(int a, int b, const Rational& w);
  void set_demand(int a, int b, const Rational& w);
  Rational capacity(int a, int b) const;
  Rational demand_of(int a, int b) const;

  bool is_integral() const;
  Rational total_capacity() const;
  Rational total_demand() const;

  // Nodes incident to at least one supply or demand pair, ascending.
  std::vector<int> active_nodes() const;
  std::vector<std::vector<int>> supply_adjacency() const;
  std::vector<Rational> demand_degree() const;

  Instance scaled_supply(Rational factor) const;
  Instance scaled_demand(Rational factor) const;
  Instance with_demands(const EdgeMap& d) const;

  std::string name(int v) const { return nodes.at(v); }
  std::string pair_name(const NodePair& p) const { return nodes.at(p.first) + "-" + nodes.at(p.second); }
};

// Helpers on the supply graph.
std::vector<int> component_labels(int n, const std::vector<std::vector<int>>& adj,
                                  const std::vector<bool>& removed = {});
bool connected_on(const std::vector<int>& nodes, const std::vector<std::vector<int>>& adj);
bool is_two_connected(const Instance& inst);

// Biconnected components (as sorted node lists) of the supply graph together
// with the set of cut nodes.
struct BlockStructure {
  std::vector<std::vector<int>> blocks;
  std::vector<bool> is_cut;
};
BlockStructure biconnected_blocks(int n, const std::vector<std::vector<int>>& adj);

// Node chain x, c1, ..., ck, y through the block-cut tree; {x, y} when they
// share a block; empty when they are disconnected.
std::vector<int> block_chain(const BlockStructure& bs, int n, int x, int y);

// Simple paths between a and b in the supply graph, shortest first (ties by
// node sequence), at most `limit` of them.
std::vector<std::vector<int>> simple_paths(const std::vector<std::vector<int>>& adj, int a, int b,
                                           std::size_t limit);

}  // namespace multiflow
