#include "dp_oracle.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <vector>

namespace resmatch::testing {

namespace {

struct Val {
  int f = INT_MIN;  // |F| in the subtree, INT_MIN = infeasible
  int r = 0;        // residual matching size in the subtree
};

// state index: [matched-down in F][free in residual]
using Table = std::array<std::array<Val, 2>, 2>;

int solve(const Graph& g, bool maximise) {
  auto better = [&](const Val& a, const Val& b) {
    if (a.f != b.f) return a.f > b.f;
    return maximise ? a.r > b.r : a.r < b.r;
  };
  auto add = [](Val a, const Val& b, int df) {
    if (a.f == INT_MIN || b.f == INT_MIN) return Val{};
    return Val{a.f + b.f + df, a.r + b.r};
  };
  const int n = g.n();
  std::vector<Table> tab(n);
  std::vector<int> parent(n, -1), order;
  std::vector<char> seen(n, 0);
  int total_f = 0, total_r = 0;
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    order.clear();
    order.push_back(root);
    seen[root] = 1;
    for (size_t i = 0; i < order.size(); ++i)
      for (int w : g.adj(order[i]))
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[i];
          order.push_back(w);
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      // cur[a][b]: a = v matched to a child in F, b = some residual child is free
      std::array<std::array<Val, 2>, 2> cur{};
      cur[0][0] = Val{0, 0};
      for (int c : g.adj(v)) {
        if (c == parent[v]) continue;
        const Table& t = tab[c];
        Val c_unmatched{}, c_any[2]{};
        for (int s = 0; s < 2; ++s) {
          if (better(t[0][s], c_unmatched)) c_unmatched = t[0][s];
          for (int a = 0; a < 2; ++a)
            if (better(t[a][s], c_any[s])) c_any[s] = t[a][s];
        }
        std::array<std::array<Val, 2>, 2> nxt{};
        auto put = [&](int a, int b, const Val& x) {
          if (x.f != INT_MIN && better(x, nxt[a][b])) nxt[a][b] = x;
        };
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            if (cur[a][b].f == INT_MIN) continue;
            if (a == 0) put(1, b, add(cur[a][b], c_unmatched, 1));
            for (int s = 0; s < 2; ++s) put(a, b | s, add(cur[a][b], c_any[s], 0));
          }
        cur = nxt;
      }
      Table out{};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          if (cur[a][b].f == INT_MIN) continue;
          Val x{cur[a][b].f, cur[a][b].r + b};
          int free = b ? 0 : 1;
          if (better(x, out[a][free])) out[a][free] = x;
        }
      tab[v] = out;
    }
    Val best{};
    for (const auto& row : tab[root])
      for (const auto& x : row)
        if (x.f != INT_MIN && better(x, best)) best = x;
    total_f += best.f;
    total_r += best.r;
  }
  (void)total_f;
  return total_r;
}

}  // namespace

std::pair<int, int> dp_min_max(const Graph& forest) { return {solve(forest, false), solve(forest, true)}; }

}  // namespace resmatch::testing
