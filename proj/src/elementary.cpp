#include "resmatch/elementary.hpp"

#include <algorithm>

namespace resmatch {

StarReduction star_reduce(const Graph& g) {
  StarReduction r;
  std::vector<char> drop(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    if (g.deg(v) < 3) continue;
    int best_w = -1, best_u = -1;
    for (int u : g.adj(v)) {
      if (g.deg(u) != 2) continue;
      int w = g.adj(u)[0] == v ? g.adj(u)[1] : g.adj(u)[0];
      if (g.deg(w) == 1 && (best_w < 0 || w < best_w)) {
        best_w = w;
        best_u = u;
      }
    }
    if (best_w >= 0) {
      drop[best_w] = drop[best_u] = 1;
      r.removed_pairs.push_back({v, {best_w, best_u}});
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (!drop[v]) r.kept.push_back(v);
  r.reduced = induced(g, r.kept);
  return r;
}

std::optional<ElementaryDecomposition> is_elementary(const Graph& g) {
  auto sr = star_reduce(g);
  const Graph& h = sr.reduced;
  if (h.max_degree() > 2 || h.m() != h.n() - 1) return std::nullopt;
  ElementaryDecomposition d;
  int start = 0;
  for (int v = 0; v < h.n(); ++v)
    if (h.deg(v) <= 1) {
      start = v;
      break;
    }
  std::vector<int> index(g.n(), -1);
  for (int prev = -1, v = start;;) {
    index[sr.kept[v]] = static_cast<int>(d.spine.size());
    d.spine.push_back(sr.kept[v]);
    int next = -1;
    for (int w : h.adj(v))
      if (w != prev) next = w;
    if (next < 0) break;
    prev = v;
    v = next;
  }
  auto pairs = sr.removed_pairs;
  std::sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) { return index[x.first] < index[y.first]; });
  for (const auto& [v, wu] : pairs) {
    d.pendant_index.push_back(index[v]);
    d.pendant_pairs.push_back(wu);
  }
  return d;
}

long count_maximum_matchings(const ElementaryDecomposition& d) {
  const int n = d.n();
  if (n % 2 == 1) return 1;
  long c = n / 2 + 1;
  for (int i : d.pendant_index)
    if (i % 2 == 0) ++c;
  return c;
}

namespace {

// Maximum matching with `exposed_spine` (spine index) or pendant leaf of `exposed_pair` left uncovered.
Matching build(const ElementaryDecomposition& d, int exposed_spine, int exposed_pair) {
  EdgeList m;
  int skip = exposed_spine;
  for (size_t k = 0; k < d.pendant_pairs.size(); ++k) {
    auto [w, u] = d.pendant_pairs[k];
    if (static_cast<int>(k) == exposed_pair) {
      m.emplace_back(u, d.spine[d.pendant_index[k]]);
      skip = d.pendant_index[k];
    } else {
      m.emplace_back(w, u);
    }
  }
  const int len = static_cast<int>(d.spine.size());
  for (int i = 0; i + 1 < len;) {
    if (i == skip) {
      ++i;
      continue;
    }
    if (i + 1 == skip) throw DefectError("elementary reconstruction: odd spine segment");
    m.emplace_back(d.spine[i], d.spine[i + 1]);
    i += 2;
  }
  return Matching(std::move(m));
}

}  // namespace

std::vector<Matching> enumerate_elementary(const ElementaryDecomposition& d) {
  std::vector<Matching> out;
  const int n = d.n();
  if (n % 2 == 1) {
    out.push_back(build(d, -1, -1));
  } else {
    for (int i = 0; i <= n; i += 2) out.push_back(build(d, i, -1));
    for (size_t k = 0; k < d.pendant_index.size(); ++k)
      if (d.pendant_index[k] % 2 == 0) out.push_back(build(d, -1, static_cast<int>(k)));
  }
  const size_t beta = (d.spine.size() + 2 * d.pendant_pairs.size()) / 2;
  for (const auto& f : out)
    if (f.size() != beta || !is_matching(f.edges)) throw DefectError("elementary reconstruction failed");
  if (static_cast<long>(out.size()) != count_maximum_matchings(d))
    throw DefectError("elementary enumeration disagrees with the closed-form count");
  return out;
}

ElementaryResult solve_elementary_min(const Graph& t, const ElementaryDecomposition& d, const Matching& gamma) {
  ElementaryResult best;
  bool found = false;
  for (auto& f : enumerate_elementary(d)) {
    if (!std::includes(f.edges.begin(), f.edges.end(), gamma.edges.begin(), gamma.edges.end())) continue;
    int q = beta_value(remove_matching(t, f));
    if (!found || q < best.value) {
      best = {std::move(f), q};
      found = true;
    }
  }
  if (!found) throw DefectError("elementary min: pendant matching not contained in any maximum matching");
  return best;
}

ElementaryResult solve_elementary_max(const Graph& t, const ElementaryDecomposition& d, Edge e) {
  ElementaryResult best;
  int overall = -1;
  bool found = false;
  for (auto& f : enumerate_elementary(d)) {
    int q = beta_value(remove_matching(t, f));
    overall = std::max(overall, q);
    if (!f.contains(e)) continue;
    if (!found || q > best.value) {
      best = {std::move(f), q};
      found = true;
    }
  }
  if (!found || best.value != overall)
    throw DefectError("elementary max: no maximum matching with the prescribed pendant edge attains L");
  return best;
}

ElementaryResult solve_elementary_min(const Tree& t, const Matching& gamma) {
  auto d = is_elementary(t);
  if (!d) throw InputError("tree is not elementary");
  return solve_elementary_min(t.graph(), *d, gamma);
}

ElementaryResult solve_elementary_max(const Tree& t, Edge e) {
  auto d = is_elementary(t);
  if (!d) throw InputError("tree is not elementary");
  auto [theta, bar] = edge_partition(t.graph());
  if (!std::binary_search(bar.begin(), bar.end(), e)) throw InputError("edge is not pendant");
  return solve_elementary_max(t.graph(), *d, e);
}

}  // namespace resmatch
