#include "resmatch/reductions.hpp"

#include <algorithm>
#include <sstream>

#include "resmatch/elementary.hpp"

namespace resmatch {

const char* action_name(Action a) {
  switch (a) {
    case Action::Strip: return "STRIP";
    case Action::Cut: return "CUT";
    case Action::Split: return "SPLIT";
  }
  return "?";
}

std::string format_step(const ReductionStep& s) {
  std::ostringstream os;
  os << s.rule << ' ' << s.letter << ' ' << action_name(s.action) << ' ';
  for (size_t i = 0; i < s.subs.size(); ++i) os << (i ? "+" : "") << s.subs[i].keep.size();
  if (s.subs.empty()) os << '0';
  os << ' ';
  if (s.guards.empty()) os << '-';
  for (size_t i = 0; i < s.guards.size(); ++i) os << (i ? "," : "") << s.guards[i].name << '=' << s.guards[i].value;
  return os.str();
}

bool is_support(const Graph& g, VertexId v) {
  for (int w : g.adj(v))
    if (g.deg(w) == 1) return true;
  return false;
}

bool is_deep(const Graph& g, Edge e) {
  return g.deg(e.a) >= 2 && g.deg(e.b) >= 2 && !is_support(g, e.a) && !is_support(g, e.b);
}

Matching build_gamma(const Graph& t) { return Matching(extend_pendant_matching(t)); }

BranchContext locate_branch(const Graph& g) {
  auto sr = star_reduce(g);
  const Graph& h = sr.reduced;
  if (h.max_degree() <= 2) throw InputError("tree is elementary: no branch vertex");
  auto pl = peel_levels(h);
  int best = -1;
  for (int v = 0; v < h.n(); ++v)
    if (h.deg(v) >= 3 && (best < 0 || pl.k[v] < pl.k[best])) best = v;
  BranchContext ctx;
  ctx.vbar = sr.kept[best];
  ctx.reduced_degree = h.deg(best);
  for (int w : h.adj(best)) {
    std::vector<VertexId> path;
    int prev = best, cur = w;
    while (true) {
      path.push_back(cur);
      if (h.deg(cur) != 2) break;
      int next = h.adj(cur)[0] == prev ? h.adj(cur)[1] : h.adj(cur)[0];
      prev = cur;
      cur = next;
    }
    if (h.deg(cur) != 1) continue;
    Arm arm;
    arm.clean = true;
    for (int x : path) {
      arm.vertices.push_back(sr.kept[x]);
      if (h.deg(x) != g.deg(sr.kept[x])) arm.clean = false;
    }
    ctx.arms.push_back(std::move(arm));
  }
  std::sort(ctx.arms.begin(), ctx.arms.end(), [](const Arm& a, const Arm& b) {
    return *std::min_element(a.vertices.begin(), a.vertices.end()) <
           *std::min_element(b.vertices.begin(), b.vertices.end());
  });
  return ctx;
}

void embed(const Graph& g, const Pattern& p, const std::function<bool(const std::vector<VertexId>&)>& cb) {
  int root = 0;
  auto rank = [&](int i) { return p.deg[i] == 1 ? 0 : p.deg[i] == 2 ? 1 : p.deg[i] > 0 ? 2 : 3; };
  for (int i = 1; i < p.k; ++i)
    if (rank(i) < rank(root)) root = i;
  std::vector<std::vector<int>> padj(p.k);
  for (auto [a, b] : p.edges) {
    padj[a].push_back(b);
    padj[b].push_back(a);
  }
  std::vector<int> order{root}, parent(p.k, -1);
  std::vector<char> seen(p.k, 0);
  seen[root] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (int w : padj[order[i]])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = order[i];
        order.push_back(w);
      }
  std::vector<VertexId> map(p.k, -1);
  std::vector<char> used(g.n(), 0);
  auto ok = [&](int pi, VertexId v) { return !used[v] && (p.deg[pi] < 0 || g.deg(v) == p.deg[pi]); };
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == order.size()) return cb(map);
    int pi = order[i];
    for (int v : g.adj(map[parent[pi]])) {
      if (!ok(pi, v)) continue;
      map[pi] = v;
      used[v] = 1;
      bool stop = rec(i + 1);
      used[v] = 0;
      if (stop) return true;
    }
    return false;
  };
  for (int v = 0; v < g.n(); ++v) {
    if (!ok(root, v)) continue;
    map[root] = v;
    used[v] = 1;
    bool stop = rec(1);
    used[v] = 0;
    if (stop) return;
  }
}

namespace {

bool fits(const Graph& g, const Pattern& p, const std::vector<VertexId>& u) {
  if (static_cast<int>(u.size()) != p.k) return false;
  std::vector<VertexId> s = u;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  for (int i = 0; i < p.k; ++i)
    if (p.deg[i] >= 0 && g.deg(u[i]) != p.deg[i]) return false;
  for (auto [a, b] : p.edges)
    if (!g.has_edge(Edge(u[a], u[b]))) return false;
  return true;
}

Pattern path(int k, std::vector<int> deg, std::vector<std::pair<int, int>> extra = {}) {
  Pattern p;
  p.k = static_cast<int>(deg.size());
  for (int i = 1; i < k; ++i) p.edges.emplace_back(i - 1, i);
  for (auto e : extra) p.edges.push_back(e);
  p.deg = std::move(deg);
  return p;
}

std::vector<VertexId> minus(std::vector<VertexId> vs, VertexId x) {
  vs.erase(std::remove(vs.begin(), vs.end(), x), vs.end());
  return vs;
}

class Firing {
 public:
  Firing(const Graph& g, Objective obj, const EdgeList* gamma, const ValueFn& val, const char* id,
         const std::vector<VertexId>& u)
      : g_(g), obj_(obj), gamma_(gamma), val_(val), u_(u) {
    step.rule = id;
    step.u = u;
  }

  VertexId u(int i) const { return u_[i]; }
  int deg(int i) const { return g_.deg(u_[i]); }
  // Length of the clean arm leaving u_i through u_j, or -1 when it reaches a branch vertex.
  int arm(int i, int j) const {
    VertexId prev = u_[i], cur = u_[j];
    int len = 1;
    while (g_.deg(cur) == 2) {
      VertexId nxt = g_.adj(cur)[0] == prev ? g_.adj(cur)[1] : g_.adj(cur)[0];
      prev = cur, cur = nxt, ++len;
    }
    return g_.deg(cur) == 1 ? len : -1;
  }
  Edge E(int i, int j) const { return Edge(u_[i], u_[j]); }
  // Component of u_j in G - (u_i, u_j), plus u_i.
  std::vector<VertexId> S(int i, int j) const { return side_vertices(g_, u_[i], u_[j]); }
  std::vector<VertexId> S_minus(int i, int j, int x) const { return minus(S(i, j), u_[x]); }

  bool in_gamma(int i, int j) const {
    return gamma_ && std::binary_search(gamma_->begin(), gamma_->end(), E(i, j));
  }
  bool deep(int i, int j) const { return is_deep(g_, E(i, j)); }

  long V(const std::string& name, const std::vector<VertexId>& keep) {
    long v = val_(keep);
    step.guards.push_back({(obj_ == Objective::Min ? "l" : "L") + name, v});
    return v;
  }
  long B(const std::string& name, const std::vector<VertexId>& keep) {
    long v = beta_value(induced(g_, keep));
    step.guards.push_back({"b" + name, v});
    return v;
  }
  bool pi(const std::string& name, int i, int j) {
    bool r = in_pi(g_, E(i, j));
    step.guards.push_back({"pi" + name, r ? 1 : 0});
    return r;
  }

  bool cut(char letter, const std::string& name, int i, int j) {
    Edge e = E(i, j);
    if (obj_ == Objective::Min && gamma_ && std::binary_search(gamma_->begin(), gamma_->end(), e)) return false;
    step.letter = letter;
    step.action = Action::Cut;
    step.named.push_back({name, e});
    std::vector<VertexId> all(g_.n());
    for (int v = 0; v < g_.n(); ++v) all[v] = v;
    step.subs.push_back({std::move(all), {e}, std::nullopt});
    return true;
  }

  bool split(char letter, const std::string& name, int i, int j) {
    Edge e = E(i, j);
    if (g_.deg(e.a) < 2 || g_.deg(e.b) < 2) return false;
    if (obj_ == Objective::Min && !is_deep(g_, e)) return false;
    step.letter = letter;
    step.action = Action::Split;
    step.named.push_back({name, e});
    std::optional<Edge> forced;
    if (obj_ == Objective::Max) forced = e;
    step.subs.push_back({side_vertices(g_, e.b, e.a), {}, forced});
    step.subs.push_back({side_vertices(g_, e.a, e.b), {}, forced});
    return true;
  }

  bool strip(char letter, std::vector<int> idx, std::vector<std::pair<int, int>> ext,
             std::optional<std::pair<int, int>> forced, std::optional<int> delta) {
    step.letter = letter;
    step.action = Action::Strip;
    std::vector<char> drop(g_.n(), 0);
    for (int i : idx) drop[u_[i]] = 1;
    Subproblem sp;
    for (int v = 0; v < g_.n(); ++v)
      if (!drop[v]) sp.keep.push_back(v);
    if (forced) sp.forced = E(forced->first, forced->second);
    if (!sp.keep.empty()) step.subs.push_back(std::move(sp));
    for (auto [a, b] : ext) step.extension.push_back(E(a, b));
    std::sort(step.extension.begin(), step.extension.end());
    step.value_delta = delta;
    return true;
  }

  ReductionStep step;

 private:
  const Graph& g_;
  Objective obj_;
  const EdgeList* gamma_;
  const ValueFn& val_;
  std::vector<VertexId> u_;
};

struct Rule {
  const char* id;
  Pattern pattern;
  std::function<bool(Firing&)> fire;
};

// Sides follow one convention: for (u_i, u_j) with i < j, G1 holds u_0 and is S(j, i); G2 is S(i, j).

const std::vector<Rule>& min_rules() {
  static const std::vector<Rule> rules = {
      {"min_twin_p2", path(5, {1, 2, -1, 2, 1}),
       [](Firing& f) { return f.strip('-', {0, 1}, {{0, 1}}, std::nullopt, std::nullopt); }},
      {"min_leaf_p2", path(4, {1, -1, 2, 1}),
       [](Firing& f) { return f.in_gamma(0, 1) && f.strip('-', {0, 1, 2, 3}, {{0, 1}, {2, 3}}, std::nullopt, 1); }},
      {"min_leaf_pair", path(3, {1, -1, 1}),
       [](Firing& f) { return f.in_gamma(0, 1) && f.strip('-', {0, 1, 2}, {{0, 1}}, std::nullopt, 1); }},
      {"min_arm13", path(5, {1, 2, -1, -1, 1}),
       [](Firing& f) { return f.in_gamma(3, 4) && f.cut('-', "e", 2, 3); }},
      {"min_arm14", path(6, {1, 2, -1, 2, -1, 1}),
       [](Firing& f) { return f.in_gamma(4, 5) && f.deep(2, 3) && f.split('-', "e", 2, 3); }},
      {"min_arm15", path(5, {-1, 2, 2, -1, 1}),
       [](Firing& f) {
         if (!f.in_gamma(3, 4) || !f.deep(0, 1)) return false;
         if (!f.pi("e", 2, 3)) return f.split('a', "f", 1, 2);
         long a = f.V("G1f", f.S(2, 1)), b = f.V("G1g", f.S(1, 0));
         if (a == 1 + b) return f.split('b', "g", 0, 1);
         if (a <= b) return f.split('c', "f", 1, 2);
         return false;
       }},
      {"min_arm33", path(7, {1, 2, -1, -1, -1, 2, 1}),
       [](Firing& f) {
         if (!f.pi("e", 2, 3)) return f.cut('a', "e", 2, 3);
         if (!f.pi("e'", 3, 4)) return f.cut('b', "e'", 3, 4);
         long a = f.V("G1e", f.S(3, 2)), b = f.V("G2e'-u3", f.S_minus(3, 4, 3));
         long c = f.V("G1e-u3", f.S_minus(3, 2, 3)), d = f.V("G2e'", f.S(3, 4));
         if (a + b <= c + d) return f.cut('c', "e'", 3, 4);
         return f.cut('d', "e", 2, 3);
       }},
      {"min_arm34", path(8, {1, 2, -1, -1, 2, -1, 2, 1}),
       [](Firing& f) {
         if (!f.pi("e", 2, 3)) return f.cut('a', "e", 2, 3);
         if (!f.pi("e'", 3, 4)) return f.split('b', "f'", 4, 5);
         long x = f.V("G1e-u3", f.S_minus(3, 2, 3)) + f.V("G2e'", f.S(3, 4));
         long y = f.V("G1e", f.S(3, 2)) + f.V("G2f'", f.S(4, 5));
         if (x <= y) return f.cut('c', "e", 2, 3);
         if (x >= y + 1) return f.split('d', "f'", 4, 5);
         return false;
       }},
      {"min_arm44", path(9, {1, 2, -1, 2, -1, 2, -1, 2, 1}),
       [](Firing& f) {
         if (!f.pi("e", 3, 4)) return f.split('a', "f", 2, 3);
         if (!f.pi("e'", 4, 5)) return f.split('b', "f'", 5, 6);
         long x = f.V("G1e", f.S(4, 3)) + f.V("G2f'", f.S(5, 6));
         long y = f.V("G1f", f.S(3, 2)) + f.V("G2e'", f.S(4, 5));
         if (x <= y) return f.split('c', "f'", 5, 6);
         return f.split('d', "f", 2, 3);
       }},
      {"min_arm35", path(7, {1, 2, -1, -1, 2, 2, -1}),
       [](Firing& f) {
         if (f.arm(3, 4) < 5) return false;
         if (!f.pi("e", 2, 3)) return f.cut('a', "e", 2, 3);
         if (!f.pi("e'", 3, 4)) return f.split('b', "f'", 4, 5);
         long g1e = f.V("G1e", f.S(3, 2));
         long a = f.V("G1e-u3", f.S_minus(3, 2, 3)) + f.V("G2e'", f.S(3, 4));
         long lf = f.V("G2f'", f.S(4, 5)), lg = f.V("G2g'", f.S(5, 6));
         long bf = f.B("G2f'", f.S(4, 5)), bg = f.B("G2g'", f.S(5, 6));
         long b = g1e + lf, c = g1e + lg;
         if (bf == bg + 1) {
           if (a >= b + 1) return f.split('d', "f'", 4, 5);
           if (a <= b) return f.cut('e', "e", 2, 3);
         } else if (bf == bg && lf == lg + 1) {
           if (a <= c) return f.cut('f', "e", 2, 3);
           if (a >= c + 1) return f.split('g', "f'", 4, 5);
         } else if (bf == bg && lf <= lg) {
           if (a >= b + 1) return f.split('h', "f'", 4, 5);
           if (a <= b) return f.cut('i', "e", 2, 3);
         }
         return false;
       }},
      {"min_arm45", path(8, {1, 2, -1, 2, -1, 2, 2, -1}),
       [](Firing& f) {
         if (f.arm(4, 5) < 5) return false;
         if (!f.pi("e", 3, 4)) return f.split('a', "f", 2, 3);
         if (!f.pi("e'", 4, 5)) return f.split('b', "f'", 5, 6);
         long g1e = f.V("G1e", f.S(4, 3));
         long a = f.V("G1f", f.S(3, 2)) + f.V("G2e'", f.S(4, 5));
         long lf = f.V("G2f'", f.S(5, 6)), lg = f.V("G2g'", f.S(6, 7));
         long bf = f.B("G2f'", f.S(5, 6)), bg = f.B("G2g'", f.S(6, 7));
         long b = g1e + lf, c = g1e + lg;
         if (bf == bg + 1) {
           if (a >= b) return f.split('d', "f'", 5, 6);
           return f.split('e', "f", 2, 3);
         } else if (bf == bg && lf == lg + 1) {
           if (a <= c) return f.split('f', "f", 2, 3);
           return f.split('g', "f'", 5, 6);
         } else if (bf == bg && lf <= lg) {
           if (a >= b) return f.split('h', "f'", 5, 6);
           return f.split('i', "f", 2, 3);
         }
         return false;
       }},
      {"min_arm55", path(7, {-1, 2, 2, -1, 2, 2, -1}),
       [](Firing& f) {
         if (!f.pi("e", 2, 3)) return f.split('a', "f", 1, 2);
         if (!f.pi("e'", 3, 4)) return f.split('b', "f'", 4, 5);
         long g1g = f.V("G1g", f.S(1, 0)), g1f = f.V("G1f", f.S(2, 1)), g1e = f.V("G1e", f.S(3, 2));
         long g2e = f.V("G2e'", f.S(3, 4)), lf = f.V("G2f'", f.S(4, 5)), lg = f.V("G2g'", f.S(5, 6));
         long bf = f.B("G2f'", f.S(4, 5)), bg = f.B("G2g'", f.S(5, 6));
         long p = g1e + lf, q = g1f + g2e;
         if (bf == bg + 1) {
           if (p >= q) return f.split('d', "f", 1, 2);
           return f.split('e', "f'", 4, 5);
         }
         if (bf != bg) return false;
         if (lf <= lg && g1f <= g1g) {
           if (p >= q) return f.split('f', "f", 1, 2);
           return f.split('g', "f'", 4, 5);
         }
         if (lf == lg + 1 && g1f == g1g + 1) return f.split('h', "g'", 5, 6);
         if (lf == lg + 1 && g1f <= g1g) return f.split('i', "f", 1, 2);
         if (lf <= lg && g1f == g1g + 1) return f.split('j', "f'", 4, 5);
         return false;
       }},
  };
  return rules;
}

const std::vector<Rule>& max_rules() {
  static const std::vector<Rule> rules = {
      {"max_arm_strip", path(4, {1, 2, 2, -1}),
       [](Firing& f) { return f.strip('-', {0, 1}, {{0, 1}}, std::make_pair(2, 3), std::nullopt); }},
      {"max_leaf_pair", path(3, {1, -1, 1}),
       [](Firing& f) { return f.strip('-', {0, 1, 2}, {{0, 1}}, std::nullopt, 1); }},
      {"max_leaf_p2", path(4, {1, -1, 2, 1}),
       [](Firing& f) { return f.strip('-', {0, 1, 2, 3}, {{0, 1}, {2, 3}}, std::nullopt, 1); }},
      {"max_twin_p2", path(5, {1, 2, -1, 2, 1, -1}, {{2, 5}}),
       [](Firing& f) {
         if (!f.pi("f", 2, 5)) return f.cut('a', "f", 2, 5);
         if (!f.pi("e", 1, 2)) return f.strip('b', {3, 4}, {{3, 4}}, std::make_pair(0, 1), std::nullopt);
         long d = f.V("G1f", f.S(2, 5)) - f.V("G1f-u2", f.S_minus(2, 5, 2));
         if (d <= 1) return f.cut('d', "f", 2, 5);
         return f.strip('e', {3, 4}, {{3, 4}}, std::make_pair(0, 1), std::nullopt);
       }},
      {"max_leaf_arm", path(4, {-1, 2, -1, 1}), [](Firing& f) { return f.split('-', "f", 0, 1); }},
      {"max_fork", path(5, {-1, 2, 3, -1, 1, 2, 1}, {{5, 6}, {2, 5}}),
       [](Firing& f) { return f.split('-', "f", 1, 2); }},
      {"max_double", path(6, {1, 2, 3, 3, 2, 1, -1, 1, -1}, {{6, 7}, {2, 8}, {3, 6}}),
       [](Firing& f) {
         auto g1 = f.S(2, 8), g0 = f.S_minus(2, 8, 2);
         long b1 = f.B("G1g", g1), b0 = f.B("G1g-u2", g0);
         if (b1 == b0) return f.split('a', "f", 2, 3);
         long l1 = f.V("G1g", g1), l0 = f.V("G1g-u2", g0);
         if (b1 == b0 + 1 && l1 == l0) return f.split('b', "g", 2, 8);
         if (b1 == b0 + 1 && l1 <= l0 - 1) return f.split('c', "f", 2, 3);
         return false;
       }},
      {"max_chain", path(5, {-1, 2, -1, 2, -1}),
       [](Firing& f) {
         if (!f.pi("e", 1, 2)) return f.split('a', "f", 0, 1);
         if (!f.pi("e'", 2, 3)) return f.split('b', "f'", 3, 4);
         long x = f.V("G1e", f.S(2, 1)) + f.V("G2f'", f.S(3, 4));
         long y = f.V("G1f", f.S(1, 0)) + f.V("G2e'", f.S(2, 3));
         if (x >= y) return f.split('c', "f'", 3, 4);
         return f.split('d', "f", 0, 1);
       }},
      {"max_chain_tail", path(6, {-1, 2, -1, 3, 2, -1, 2, 1}, {{6, 7}, {3, 6}}),
       [](Firing& f) {
         if (!f.pi("e", 1, 2)) return f.split('a', "f", 0, 1);
         if (!f.pi("e'", 2, 3)) return f.split('b', "f'", 3, 4);
         long x = f.V("G1e", f.S(2, 1)) + f.V("G2f'", f.S(3, 4));
         long y = f.V("G1f", f.S(1, 0)) + f.V("G2e'", f.S(2, 3));
         if (x >= y) return f.split('c', "f'", 3, 4);
         if (x <= y - 1) return f.split('d', "f", 0, 1);
         return false;
       }},
      {"max_chain_forks", path(7, {-1, 2, 3, -1, 3, 2, -1, 2, 1, 2, 1}, {{7, 8}, {9, 10}, {2, 7}, {4, 9}}),
       [](Firing& f) {
         if (!f.pi("e", 2, 3)) return f.split('a', "f", 1, 2);
         if (!f.pi("e'", 3, 4)) return f.split('b', "f'", 4, 5);
         long x = f.V("G1e", f.S(3, 2)) + f.V("G2f'", f.S(4, 5));
         long y = f.V("G1f", f.S(2, 1)) + f.V("G2e'", f.S(3, 4));
         if (x >= y) return f.split('c', "f'", 4, 5);
         return f.split('d', "f", 1, 2);
       }},
      {"max_fork_chain", path(7, {1, 2, 3, 3, -1, 2, -1, 1, 2, -1}, {{7, 8}, {2, 9}, {3, 8}}),
       [](Firing& f) {
         if (!f.pi("e", 3, 4)) return f.split('a', "f", 2, 3);
         if (!f.pi("e'", 4, 5)) return f.split('b', "f'", 5, 6);
         auto g1 = f.S(2, 9), g0 = f.S_minus(2, 9, 2);
         long b1 = f.B("G1g", g1), b0 = f.B("G1g-u2", g0);
         long l1 = f.V("G1g", g1), l0 = f.V("G1g-u2", g0);
         long p = l0 + f.V("G2e'", f.S(4, 5)), q = l1 + f.V("G2f'", f.S(5, 6));
         if (b1 == b0) {
           if (p <= q) return f.split('d', "f'", 5, 6);
           return f.split('e', "f", 2, 3);
         }
         if (b1 != b0 + 1) return false;
         if (l1 == l0) return f.split('f', "f'", 5, 6);
         if (l1 <= l0 - 1) {
           if (p <= q) return f.split('g', "f'", 5, 6);
           return f.split('h', "f", 2, 3);
         }
         return false;
       }},
      {"max_fork_chain2", path(8, {1, 2, 3, 3, -1, 3, 2, -1, 2, 1, 2, 1, -1}, {{8, 9}, {10, 11}, {2, 12}, {3, 8}, {5, 10}}),
       [](Firing& f) {
         if (!f.pi("e", 3, 4)) return f.split('a', "f", 2, 3);
         if (!f.pi("e'", 4, 5)) return f.split('b', "f'", 5, 6);
         auto g1 = f.S(2, 12), g0 = f.S_minus(2, 12, 2);
         long b1 = f.B("G1g", g1), b0 = f.B("G1g-u2", g0);
         long l1 = f.V("G1g", g1), l0 = f.V("G1g-u2", g0);
         long p = l0 + f.V("G2g'", f.S(6, 7)), q = l1 + f.V("G2f'", f.S(5, 6));
         if (b1 == b0) {
           if (p <= q) return f.split('d', "f'", 5, 6);
           return f.split('e', "f", 2, 3);
         }
         if (b1 != b0 + 1) return false;
         if (l1 == l0) return f.split('f', "f'", 5, 6);
         if (l1 <= l0 - 1) {
           if (p <= q) return f.split('g', "f'", 5, 6);
           return f.split('h', "f", 2, 3);
         }
         return false;
       }},
      {"max_fork_chain3",
       path(9, {1, 2, 3, 3, -1, 3, 3, 2, 1, 1, 2, 1, 2, -1, -1}, {{9, 10}, {11, 12}, {2, 13}, {3, 10}, {5, 12}, {6, 14}}),
       [](Firing& f) {
         if (!f.pi("e", 3, 4)) return f.split('a', "f", 2, 3);
         if (!f.pi("e'", 4, 5)) return f.split('b', "f'", 5, 6);
         auto g1 = f.S(2, 13), g0 = f.S_minus(2, 13, 2);
         long b1 = f.B("G1g", g1), b0 = f.B("G1g-u2", g0);
         long x = f.V("G1g", g1), xm = f.V("G1g-u2", g0);
         long y = f.V("G2g'", f.S(6, 14)), ym = f.V("G2g'-u6", f.S_minus(6, 14, 6));
         if (b1 == b0) {
           if (xm + y <= x + ym) return f.split('d', "f'", 5, 6);
           return f.split('e', "f", 2, 3);
         }
         if (b1 != b0 + 1) return false;
         if (x == xm && y == ym) return f.split('f', "g", 2, 13);
         if (x == xm && y <= ym - 1) return f.split('g', "f'", 5, 6);
         if (x <= xm - 1 && y == ym) return f.split('h', "f", 2, 3);
         if (x <= xm - 1 && y <= ym - 1) {
           if (x + ym >= xm + y) return f.split('i', "f'", 5, 6);
           return f.split('j', "f", 2, 3);
         }
         return false;
       }},
  };
  return rules;
}

const Rule* find_rule(const std::vector<Rule>& rules, const std::string& id) {
  for (const auto& r : rules)
    if (id == r.id) return &r;
  return nullptr;
}

std::optional<ReductionStep> try_rule(const Graph& g, Objective obj, const EdgeList* gamma, const ValueFn& val,
                                      const Rule& r, const std::vector<VertexId>* fixed) {
  std::optional<ReductionStep> out;
  auto attempt = [&](const std::vector<VertexId>& u) {
    Firing f(g, obj, gamma, val, r.id, u);
    if (!r.fire(f)) return false;
    out = std::move(f.step);
    return true;
  };
  if (fixed) {
    if (fits(g, r.pattern, *fixed)) attempt(*fixed);
  } else {
    embed(g, r.pattern, attempt);
  }
  return out;
}

// Anchored embedding at the branch vertex chosen by the two shortest clean arms.
std::optional<std::pair<std::string, std::vector<VertexId>>> min_anchor(const BranchContext& ctx) {
  std::vector<const Arm*> clean;
  for (const auto& a : ctx.arms)
    if (a.clean) clean.push_back(&a);
  if (clean.size() < 2) return std::nullopt;
  std::stable_sort(clean.begin(), clean.end(), [](const Arm* x, const Arm* y) { return x->length() < y->length(); });
  const auto& a = clean[0]->vertices;
  const auto& b = clean[1]->vertices;
  int p = clean[0]->length(), q = clean[1]->length();
  VertexId v = ctx.vbar;
  auto rev = [](const std::vector<VertexId>& arm, int k) {
    return std::vector<VertexId>(arm.rbegin() + (arm.size() - k), arm.rend());
  };
  auto cat = [](std::vector<VertexId> x, std::initializer_list<VertexId> mid, const std::vector<VertexId>& y) {
    x.insert(x.end(), mid);
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  auto head = [](const std::vector<VertexId>& arm, int k) { return std::vector<VertexId>(arm.begin(), arm.begin() + k); };
  if (p == 1 && q == 3) return std::make_pair("min_arm13", cat(rev(b, 3), {v}, {a[0]}));
  if (p == 1 && q == 4) return std::make_pair("min_arm14", cat(rev(b, 4), {v}, {a[0]}));
  if (p == 1 && q >= 5) return std::make_pair("min_arm15", cat(rev(b, 3), {v}, {a[0]}));
  if (p == 3 && q == 3) return std::make_pair("min_arm33", cat(rev(a, 3), {v}, head(b, 3)));
  if (p == 3 && q == 4) return std::make_pair("min_arm34", cat(rev(a, 3), {v}, head(b, 4)));
  if (p == 4 && q == 4) return std::make_pair("min_arm44", cat(rev(a, 4), {v}, head(b, 4)));
  if (p == 3 && q >= 5) return std::make_pair("min_arm35", cat(rev(a, 3), {v}, head(b, 3)));
  if (p == 4 && q >= 5) return std::make_pair("min_arm45", cat(rev(a, 4), {v}, head(b, 3)));
  if (p >= 5 && q >= 5) return std::make_pair("min_arm55", cat(rev(a, 3), {v}, head(b, 3)));
  return std::nullopt;
}

std::optional<std::pair<std::string, std::vector<VertexId>>> max_anchor(const BranchContext& ctx) {
  for (const auto& a : ctx.arms) {
    if (!a.clean || a.length() < 3) continue;
    int k = a.length();
    VertexId u3 = k >= 4 ? a.vertices[k - 4] : ctx.vbar;
    return std::make_pair("max_arm_strip", std::vector<VertexId>{a.vertices[k - 1], a.vertices[k - 2], a.vertices[k - 3], u3});
  }
  return std::nullopt;
}

constexpr int kMinStrips = 3;

}  // namespace

std::vector<std::string> rule_ids(Objective obj) {
  std::vector<std::string> out;
  for (const auto& r : obj == Objective::Min ? min_rules() : max_rules()) out.push_back(r.id);
  return out;
}

std::optional<ReductionStep> select_min_rule(const Graph& t, const EdgeList& gamma, const BranchContext* ctx,
                                             const ValueFn& l, const std::vector<std::string>& prefer) {
  const auto& rules = min_rules();
  for (const auto& id : prefer)
    if (const Rule* r = find_rule(rules, id))
      if (auto s = try_rule(t, Objective::Min, &gamma, l, *r, nullptr)) return s;
  for (int i = 0; i < kMinStrips; ++i)
    if (auto s = try_rule(t, Objective::Min, &gamma, l, rules[i], nullptr)) return s;
  if (ctx)
    if (auto anchor = min_anchor(*ctx))
      if (auto s = try_rule(t, Objective::Min, &gamma, l, *find_rule(rules, anchor->first), &anchor->second)) return s;
  for (size_t i = kMinStrips; i < rules.size(); ++i)
    if (auto s = try_rule(t, Objective::Min, &gamma, l, rules[i], nullptr)) return s;
  return std::nullopt;
}

std::optional<ReductionStep> select_max_rule(const Graph& t, const BranchContext* ctx, const ValueFn& L,
                                             const std::vector<std::string>& prefer) {
  const auto& rules = max_rules();
  for (const auto& id : prefer)
    if (const Rule* r = find_rule(rules, id))
      if (auto s = try_rule(t, Objective::Max, nullptr, L, *r, nullptr)) return s;
  if (ctx)
    if (auto anchor = max_anchor(*ctx))
      if (auto s = try_rule(t, Objective::Max, nullptr, L, *find_rule(rules, anchor->first), &anchor->second)) return s;
  for (const auto& r : rules)
    if (auto s = try_rule(t, Objective::Max, nullptr, L, r, nullptr)) return s;
  return std::nullopt;
}

SubResult apply_step(const Graph& t, const ReductionStep& step, const std::vector<SubResult>& subs) {
  if (subs.size() != step.subs.size()) throw DefectError(step.rule + ": sub result count mismatch");
  EdgeList f = step.extension;
  int sum = 0;
  for (const auto& s : subs) {
    f.insert(f.end(), s.f.begin(), s.f.end());
    sum += s.value;
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (!is_matching_of(t, f)) throw DefectError(step.rule + ": recombined edges are not a matching");
  if (static_cast<int>(f.size()) != beta_value(t)) throw DefectError(step.rule + ": recombined matching is not maximum");
  int value = beta_value(remove_matching(t, Matching(f)));
  if (step.value_delta && value != sum + *step.value_delta)
    throw DefectError(step.rule + ": value identity violated");
  return {std::move(f), value};
}

}  // namespace resmatch
