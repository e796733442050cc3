#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "resmatch/errors.hpp"

namespace resmatch {

using VertexId = int;

struct Edge {
  VertexId a = 0;
  VertexId b = 0;

  Edge() = default;
  Edge(VertexId u, VertexId v) : a(u < v ? u : v), b(u < v ? v : u) {}

  bool touches(VertexId v) const { return a == v || b == v; }
  VertexId other(VertexId v) const { return a == v ? b : a; }
  auto operator<=>(const Edge&) const = default;
};

using EdgeList = std::vector<Edge>;

class Graph {
 public:
  Graph() = default;
  // Edges are canonicalised and sorted; duplicates and loops throw InputError.
  Graph(int n, EdgeList edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const EdgeList& edges() const { return edges_; }
  const std::vector<VertexId>& adj(VertexId v) const { return adj_[v]; }
  int deg(VertexId v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(Edge e) const;
  int edge_index(Edge e) const;  // -1 when absent
  int max_degree() const;

 private:
  int n_ = 0;
  EdgeList edges_;
  std::vector<std::vector<VertexId>> adj_;
};

class Tree {
 public:
  Tree() = default;
  const Graph& graph() const { return g_; }
  int n() const { return g_.n(); }
  int m() const { return g_.m(); }
  const EdgeList& edges() const { return g_.edges(); }
  const std::vector<VertexId>& adj(VertexId v) const { return g_.adj(v); }
  int deg(VertexId v) const { return g_.deg(v); }
  bool has_edge(Edge e) const { return g_.has_edge(e); }

 private:
  friend Tree validate_tree(const Graph& g);
  explicit Tree(Graph g) : g_(std::move(g)) {}
  Graph g_;
};

struct SplitPair {
  Edge e;
  Tree side1;  // contains the smaller endpoint of e
  Tree side2;
  std::vector<VertexId> map1;  // side-local id -> parent id
  std::vector<VertexId> map2;
};

struct PeelLevels {
  std::vector<std::vector<VertexId>> levels;
  std::vector<int> k;
};

Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

Tree validate_tree(const Graph& g);

std::pair<EdgeList, EdgeList> edge_partition(const Graph& g);  // (theta, theta_bar)
std::pair<std::vector<VertexId>, EdgeList> border_and_deep(const Graph& g);

SplitPair split_at_edge(const Tree& t, Edge e);
// Vertices of the component of y in t - (x,y), together with x. Sorted.
std::vector<VertexId> side_vertices(const Graph& g, VertexId x, VertexId y);

PeelLevels peel_levels(const Graph& g);
int distance(const Graph& g, VertexId u, VertexId v);

// Subgraph induced on `keep` (sorted, distinct) with edges `drop` removed.
// Returns the subgraph over local ids 0..|keep|-1 in the order of `keep`.
Graph induced(const Graph& g, const std::vector<VertexId>& keep, const EdgeList& drop = {});

// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<VertexId>> components(const Graph& g);

std::vector<VertexId> leaves(const Graph& g);

}  // namespace resmatch
