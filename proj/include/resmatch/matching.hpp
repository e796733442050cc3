#pragma once

#include <cstddef>

#include "resmatch/graph.hpp"

namespace resmatch {

struct Matching {
  EdgeList edges;  // sorted, pairwise vertex-disjoint

  Matching() = default;
  explicit Matching(EdgeList e);
  size_t size() const { return edges.size(); }
  bool contains(Edge e) const;
  bool operator==(const Matching&) const = default;
};

struct BetaResult {
  int beta = 0;
  Matching witness;
};

bool is_matching(const EdgeList& edges);
bool is_matching_of(const Graph& g, const EdgeList& edges);

// Leaf-directed greedy; accepts forests.
BetaResult beta_tree(const Graph& forest);
inline BetaResult beta_tree(const Tree& t) { return beta_tree(t.graph()); }
int beta_value(const Graph& forest);

int beta_general(const Graph& g, int edge_guard = 64);

Graph remove_matching(const Graph& g, const Matching& f);
int rho(const Matching& f, const Matching& f2);

bool in_pi(const Graph& forest, Edge e);
inline bool in_pi(const Tree& t, Edge e) { return in_pi(t.graph(), e); }
EdgeList chi(const Tree& t);

// Maximum pendant-edge matching containing `seed` (itself pendant and disjoint):
// every uncovered support vertex, ascending, takes its smallest uncovered leaf.
EdgeList extend_pendant_matching(const Graph& g, const EdgeList& seed = {});

}  // namespace resmatch
