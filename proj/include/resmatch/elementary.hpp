#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "resmatch/matching.hpp"

namespace resmatch {

struct StarReduction {
  Graph reduced;                            // over the surviving vertices, local ids
  std::vector<VertexId> kept;               // local id -> host id (ascending)
  std::vector<std::pair<VertexId, std::pair<VertexId, VertexId>>> removed_pairs;  // v -> (w, u)
};

struct ElementaryDecomposition {
  std::vector<VertexId> spine;  // v0..vn
  std::vector<int> pendant_index;  // I, ascending
  std::vector<std::pair<VertexId, VertexId>> pendant_pairs;  // (w_i, u_i) aligned with pendant_index
  int n() const { return static_cast<int>(spine.size()) - 1; }
};

StarReduction star_reduce(const Graph& t);
inline StarReduction star_reduce(const Tree& t) { return star_reduce(t.graph()); }

std::optional<ElementaryDecomposition> is_elementary(const Graph& t);
inline std::optional<ElementaryDecomposition> is_elementary(const Tree& t) { return is_elementary(t.graph()); }

long count_maximum_matchings(const ElementaryDecomposition& d);
std::vector<Matching> enumerate_elementary(const ElementaryDecomposition& d);

struct ElementaryResult {
  Matching f;
  int value = 0;
};

ElementaryResult solve_elementary_min(const Graph& t, const ElementaryDecomposition& d, const Matching& gamma);
ElementaryResult solve_elementary_max(const Graph& t, const ElementaryDecomposition& d, Edge e);
ElementaryResult solve_elementary_min(const Tree& t, const Matching& gamma);
ElementaryResult solve_elementary_max(const Tree& t, Edge e);

}  // namespace resmatch
