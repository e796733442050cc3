#pragma once

#include <random>
#include <string>
#include <vector>

#include "dp_oracle.hpp"
#include "resmatch/generators.hpp"
#include "resmatch/graph.hpp"

namespace resmatch::testing {

inline Tree tree_of(const std::string& text) { return validate_tree(parse_edge_list(text)); }

inline Tree spider7() { return make_spider(3, 2); }
inline Tree spider10() { return make_spider(3, 3); }

// Spine v0..vn with a pendant 2-path hung on each chosen spine vertex.
inline Tree elementary_tree(int spine_edges, const std::vector<int>& hang) {
  EdgeList e;
  for (int i = 0; i < spine_edges; ++i) e.emplace_back(i, i + 1);
  int next = spine_edges + 1;
  for (int i : hang) {
    e.emplace_back(i, next);
    e.emplace_back(next, next + 1);
    next += 2;
  }
  return validate_tree(Graph(next, e));
}

inline Tree random_elementary(std::mt19937_64& rng, int max_vertices) {
  int spine = 1 + static_cast<int>(rng() % 12);
  std::vector<int> hang;
  int n = spine + 1;
  for (int i = 1; i < spine && n + 2 <= max_vertices; ++i)
    if (rng() % 2) {
      hang.push_back(i);
      n += 2;
    }
  return elementary_tree(spine, hang);
}

// Random trees built to defeat the strip rules: subdivisions, long legs, coronas, lobsters.
inline Tree shaped_tree(int kind, int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph base = random_tree(n, seed).graph();
  if (kind == 0) return validate_tree(base);
  EdgeList e;
  int next = base.n();
  auto hang = [&](int v, int len) {
    for (int p = v, i = 0; i < len; ++i, p = next++) e.emplace_back(p, next);
  };
  if (kind == 1) {
    for (auto x : base.edges()) {
      e.emplace_back(x.a, next);
      e.emplace_back(next++, x.b);
    }
  } else if (kind == 2) {
    e = base.edges();
    for (int v = 0; v < base.n(); ++v)
      if (base.deg(v) == 1) hang(v, static_cast<int>(rng() % 6));
  } else if (kind == 3) {
    e = base.edges();
    for (int v = 0; v < base.n(); ++v) hang(v, 1 + static_cast<int>(rng() % 3));
  } else {
    e.clear();
    next = n;
    for (int v = 1; v < n; ++v) e.emplace_back(v - 1, v);
    for (int v = 0; v < n; ++v)
      for (int k = static_cast<int>(rng() % 3); k > 0; --k) hang(v, 1 + static_cast<int>(rng() % 4));
  }
  return validate_tree(Graph(next, e));
}
constexpr int kShapeKinds = 5;

}  // namespace resmatch::testing
