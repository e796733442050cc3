#include "resmatch/matching.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace resmatch {

Matching::Matching(EdgeList e) : edges(std::move(e)) {
  for (auto& x : edges) x = Edge(x.a, x.b);
  std::sort(edges.begin(), edges.end());
}

bool Matching::contains(Edge e) const { return std::binary_search(edges.begin(), edges.end(), e); }

bool is_matching(const EdgeList& edges) {
  std::vector<VertexId> ends;
  for (const auto& e : edges) {
    ends.push_back(e.a);
    ends.push_back(e.b);
  }
  std::sort(ends.begin(), ends.end());
  return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

bool is_matching_of(const Graph& g, const EdgeList& edges) {
  for (const auto& e : edges)
    if (e.a < 0 || e.b >= g.n() || !g.has_edge(e)) return false;
  return is_matching(edges);
}

BetaResult beta_tree(const Graph& g) {
  const int n = g.n();
  std::vector<int> parent(n, -2), order;
  order.reserve(n);
  for (int s = 0; s < n; ++s) {
    if (parent[s] != -2) continue;
    parent[s] = -1;
    size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      int v = order[head++];
      for (int w : g.adj(v))
        if (parent[w] == -2) {
          parent[w] = v;
          order.push_back(w);
        }
    }
  }
  std::vector<char> used(n, 0);
  EdgeList m;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it, p = parent[v];
    if (p >= 0 && !used[v] && !used[p]) {
      used[v] = used[p] = 1;
      m.emplace_back(v, p);
    }
  }
  BetaResult r;
  r.beta = static_cast<int>(m.size());
  r.witness = Matching(std::move(m));
  return r;
}

int beta_value(const Graph& g) { return beta_tree(g).beta; }

namespace {

struct GeneralBeta {
  std::vector<uint64_t> nbr;
  std::unordered_map<uint64_t, int> memo;

  int solve(uint64_t mask) {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int v = std::countr_zero(mask);
    uint64_t nb = nbr[v] & mask;
    int best;
    if (nb == 0) {
      best = solve(mask & ~(1ULL << v));
    } else if (std::popcount(nb) == 1) {
      // a degree-1 vertex is matched to its neighbour in some maximum matching
      int w = std::countr_zero(nb);
      best = 1 + solve(mask & ~(1ULL << v) & ~(1ULL << w));
    } else {
      best = solve(mask & ~(1ULL << v));
      for (uint64_t r = nb; r; r &= r - 1) {
        int w = std::countr_zero(r);
        best = std::max(best, 1 + solve(mask & ~(1ULL << v) & ~(1ULL << w)));
      }
    }
    memo.emplace(mask, best);
    return best;
  }
};

}  // namespace

int beta_general(const Graph& g, int edge_guard) {
  if (g.m() > edge_guard) throw GuardExceeded("beta_general: too many edges", edge_guard);
  if (g.n() > 64) throw GuardExceeded("beta_general: too many vertices", 64);
  GeneralBeta s;
  s.nbr.assign(g.n(), 0);
  for (const auto& e : g.edges()) {
    s.nbr[e.a] |= 1ULL << e.b;
    s.nbr[e.b] |= 1ULL << e.a;
  }
  uint64_t all = g.n() == 64 ? ~0ULL : ((1ULL << g.n()) - 1);
  return s.solve(all);
}

Graph remove_matching(const Graph& g, const Matching& f) {
  if (!is_matching_of(g, f.edges)) throw InputError("matching not bound to graph");
  EdgeList rest;
  for (const auto& e : g.edges())
    if (!f.contains(e)) rest.push_back(e);
  return Graph(g.n(), std::move(rest));
}

int rho(const Matching& f, const Matching& f2) {
  if (f.size() != f2.size()) throw InputError("rho: matchings of different sizes");
  int d = 0;
  for (const auto& e : f.edges)
    if (!f2.contains(e)) ++d;
  return d;
}

bool in_pi(const Graph& g, Edge e) {
  if (!g.has_edge(e)) throw InputError("in_pi: edge not in graph");
  std::vector<VertexId> keep;
  for (int v = 0; v < g.n(); ++v)
    if (v != e.a && v != e.b) keep.push_back(v);
  return beta_value(induced(g, keep)) == beta_value(g) - 1;
}

EdgeList chi(const Tree& t) {
  EdgeList out;
  for (const auto& e : border_and_deep(t.graph()).second)
    if (in_pi(t, e)) out.push_back(e);
  return out;
}

EdgeList extend_pendant_matching(const Graph& g, const EdgeList& seed) {
  std::vector<char> covered(g.n(), 0);
  EdgeList out = seed;
  for (const auto& e : seed) covered[e.a] = covered[e.b] = 1;
  for (int s = 0; s < g.n(); ++s) {
    if (covered[s]) continue;
    for (int w : g.adj(s))
      if (g.deg(w) == 1 && !covered[w]) {
        out.emplace_back(s, w);
        covered[s] = covered[w] = 1;
        break;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace resmatch
