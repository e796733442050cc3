#include "resmatch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace resmatch {

namespace {

bool is_forest(const Graph& g) { return static_cast<int>(components(g).size()) + g.m() == g.n(); }

int beta_any(const Graph& g) { return is_forest(g) ? beta_value(g) : beta_general(g); }

void check_guard(const Graph& g, const OracleGuard& guard) {
  if (is_forest(g)) {
    if (g.n() > guard.tree_vertices)
      throw GuardExceeded("oracle: tree has " + std::to_string(g.n()) + " vertices", guard.tree_vertices);
  } else if (g.n() > guard.general_vertices) {
    throw GuardExceeded("oracle: graph has " + std::to_string(g.n()) + " vertices", guard.general_vertices);
  }
}

int residual_beta(const Graph& g, const Matching& f) { return beta_any(remove_matching(g, f)); }

}  // namespace

bool is_tree(const Graph& g) { return g.n() > 0 && g.m() == g.n() - 1 && components(g).size() == 1; }

std::string format_edges(const EdgeList& edges) {
  std::string s = "{";
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(edges[i].a) + "," + std::to_string(edges[i].b) + ")";
  }
  return s + "}";
}

std::vector<Matching> enumerate_maximum_matchings(const Graph& g, const OracleGuard& guard) {
  check_guard(g, guard);
  const int n = g.n();
  const int beta = beta_any(g);
  std::vector<Matching> out;
  std::vector<char> covered(n, 0);
  EdgeList cur;
  std::function<void(int, int)> rec = [&](int v, int budget) {
    while (v < n && covered[v]) ++v;
    if (v == n) {
      out.emplace_back(cur);
      return;
    }
    covered[v] = 1;
    for (int w : g.adj(v)) {
      if (w < v || covered[w]) continue;
      covered[w] = 1;
      cur.emplace_back(v, w);
      rec(v + 1, budget);
      cur.pop_back();
      covered[w] = 0;
    }
    if (budget > 0) rec(v + 1, budget - 1);
    covered[v] = 0;
  };
  rec(0, n - 2 * beta);
  std::sort(out.begin(), out.end(), [](const Matching& x, const Matching& y) { return x.edges < y.edges; });
  return out;
}

Spectrum spectrum(const Graph& g, const OracleGuard& guard) {
  auto all = enumerate_maximum_matchings(g, guard);
  Spectrum s;
  s.count = all.size();
  s.l = 1 << 30;
  s.L = -1;
  for (const auto& f : all) {
    int q = residual_beta(g, f);
    s.l = std::min(s.l, q);
    s.L = std::max(s.L, q);
    s.witness.try_emplace(q, f);
  }
  for (const auto& [q, f] : s.witness) s.achieved.push_back(q);
  if (is_tree(g) && static_cast<int>(s.achieved.size()) != s.L - s.l + 1)
    throw DefectError("spectrum of a tree is not an interval");
  return s;
}

PendantProfile pendant_profile(const Tree& t, const OracleGuard& guard) {
  PendantProfile p;
  p.gamma_witness = Matching(extend_pendant_matching(t.graph()));
  p.eta = static_cast<int>(p.gamma_witness.size());
  if (t.n() <= guard.tree_vertices) {
    auto [theta, bar] = edge_partition(t.graph());
    bool found = false;
    for (const auto& f : enumerate_maximum_matchings(t.graph(), guard)) {
      int c = 0;
      for (const auto& e : f.edges) c += std::binary_search(bar.begin(), bar.end(), e);
      if (c == p.eta) {
        found = true;
        break;
      }
    }
    p.m_prime_nonempty = found;
  }
  return p;
}

int lambda_min(const Tree& t, Edge e, const OracleGuard& guard) {
  auto sp = split_at_edge(t, e);
  return spectrum(sp.side1.graph(), guard).l + spectrum(sp.side2.graph(), guard).l;
}

int lambda_max(const Tree& t, Edge e, const OracleGuard& guard) {
  auto sp = split_at_edge(t, e);
  return spectrum(sp.side1.graph(), guard).L + spectrum(sp.side2.graph(), guard).L;
}

bool prec1(const Graph& g, const Matching& f, const Matching& f2) {
  if (f.size() != f2.size() || rho(f, f2) != 1) return false;
  Edge x, y;
  for (const auto& e : f.edges)
    if (!f2.contains(e)) x = e;
  for (const auto& e : f2.edges)
    if (!f.contains(e)) y = e;
  for (int u3 : {x.a, x.b}) {
    if (!y.touches(u3)) continue;
    int u2 = x.other(u3), u4 = y.other(u3);
    if (u2 == u4) continue;
    for (int u1 : g.adj(u2)) {
      if (u1 == u3 || u1 == u4) continue;
      for (int u0 : g.adj(u1)) {
        if (u0 == u2 || u0 == u3 || u0 == u4) continue;
        if (f.contains(Edge(u0, u1))) return true;
      }
    }
  }
  return false;
}

namespace {

struct SuiteContext {
  const Graph& g;
  OracleGuard guard;
  bool tree;
  std::vector<Matching> ms;
  std::vector<int> res;
  int l = 0, L = 0;
  EdgeList theta, bar;

  struct Sides {
    Spectrum s1, s2;
    SplitPair sp;
  };
  std::map<Edge, Sides> sides;

  const Sides& side(Edge e) {
    auto it = sides.find(e);
    if (it != sides.end()) return it->second;
    Sides s;
    s.sp = split_at_edge(validate_tree(g), e);
    s.s1 = spectrum(s.sp.side1.graph(), guard);
    s.s2 = spectrum(s.sp.side2.graph(), guard);
    return sides.emplace(e, std::move(s)).first->second;
  }
  int lam(Edge e) { return side(e).s1.l + side(e).s2.l; }
  int Lam(Edge e) { return side(e).s1.L + side(e).s2.L; }

  // Restriction of f to side i of e, in side-local ids.
  Matching restrict_to(const EdgeList& f, const std::vector<VertexId>& map) {
    EdgeList out;
    for (const auto& x : f) {
      auto ia = std::lower_bound(map.begin(), map.end(), x.a);
      auto ib = std::lower_bound(map.begin(), map.end(), x.b);
      if (ia != map.end() && *ia == x.a && ib != map.end() && *ib == x.b)
        out.emplace_back(static_cast<int>(ia - map.begin()), static_cast<int>(ib - map.begin()));
    }
    return Matching(out);
  }
};

std::string edge_str(Edge e) { return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")"; }

PropertyLine line(const std::string& id, bool ok, const std::string& witness = "") {
  return {id, ok ? "pass" : "fail", ok ? "" : witness};
}

}  // namespace

std::vector<PropertyLine> property_suite(const Graph& g, const OracleGuard& guard) {
  SuiteContext c{g, guard, is_tree(g), {}, {}, 0, 0, {}, {}, {}};
  c.ms = enumerate_maximum_matchings(g, guard);
  for (const auto& f : c.ms) c.res.push_back(residual_beta(g, f));
  c.l = *std::min_element(c.res.begin(), c.res.end());
  c.L = *std::max_element(c.res.begin(), c.res.end());
  std::tie(c.theta, c.bar) = edge_partition(g);
  auto in_bar = [&](Edge e) { return std::binary_search(c.bar.begin(), c.bar.end(), e); };
  const size_t M = c.ms.size();
  std::vector<PropertyLine> out;
  auto na = [&](const std::string& id) { out.push_back({id, "n/a", ""}); };

  {  // swap_pendant
    std::string w;
    for (size_t i = 0; i < M && w.empty(); ++i) {
      const auto& f = c.ms[i];
      for (const auto& ep : f.edges)
        for (int s : {ep.a, ep.b})
          for (int x : g.adj(s)) {
            Edge e(s, x);
            if (e == ep || f.contains(e) || !in_bar(e) || !w.empty()) continue;
            EdgeList h;
            for (const auto& y : f.edges)
              if (y != ep) h.push_back(y);
            h.push_back(e);
            if (!is_matching(h)) continue;
            if (residual_beta(g, Matching(h)) > c.res[i]) w = format_edges(f.edges) + " e'=" + edge_str(ep) + " e=" + edge_str(e);
          }
    }
    out.push_back(line("swap_pendant", w.empty(), w));
  }
  {  // rho_lipschitz
    std::string w;
    for (size_t i = 0; i < M && w.empty(); ++i)
      for (size_t j = i + 1; j < M && w.empty(); ++j)
        if (std::abs(c.res[i] - c.res[j]) > rho(c.ms[i], c.ms[j]))
          w = format_edges(c.ms[i].edges) + " " + format_edges(c.ms[j].edges);
    out.push_back(line("rho_lipschitz", w.empty(), w));
  }
  out.push_back(line("double_bound", c.L <= 2 * c.l, "l=" + std::to_string(c.l) + " L=" + std::to_string(c.L)));
  {  // spectrum_interval
    std::vector<char> hit(c.L - c.l + 1, 0);
    for (int q : c.res) hit[q - c.l] = 1;
    std::string gap;
    for (int q = c.l; q <= c.L; ++q)
      if (!hit[q - c.l]) gap = "gap at " + std::to_string(q);
    if (c.tree) out.push_back(line("spectrum_interval", gap.empty(), gap));
    else out.push_back({"spectrum_interval", "pass", gap.empty() ? "" : gap + " (non-tree)"});
  }
  {  // pendant_levels
    std::string w;
    for (const auto& e : c.bar) {
      std::vector<char> has(c.L - c.l + 1, 0), any(c.L - c.l + 1, 0);
      for (size_t i = 0; i < M; ++i) {
        any[c.res[i] - c.l] = 1;
        if (c.ms[i].contains(e)) has[c.res[i] - c.l] = 1;
      }
      for (int q = 0; q <= c.L - c.l && w.empty(); ++q)
        if (any[q] && !has[q]) w = edge_str(e) + " k=" + std::to_string(q + c.l);
    }
    out.push_back(line("pendant_levels", w.empty(), w));
  }
  std::vector<char> pi(g.m(), 0), pi_min(g.m(), 0), pi_max(g.m(), 0);
  for (size_t i = 0; i < M; ++i)
    for (const auto& e : c.ms[i].edges) {
      int k = g.edge_index(e);
      pi[k] = 1;
      if (c.res[i] == c.l) pi_min[k] = 1;
      if (c.res[i] == c.L) pi_max[k] = 1;
    }
  EdgeList chi_set;
  if (c.tree) {
    auto deep = border_and_deep(g).second;
    for (const auto& e : deep)
      if (pi[g.edge_index(e)]) chi_set.push_back(e);
  }
  if (!c.tree) {
    for (const char* id : {"lambda_lower", "restrict_min", "lambda_at_min", "chi_min", "Lambda_upper",
                           "restrict_max", "Lambda_at_max", "theta_max"})
      na(id);
  } else {
    {  // lambda_lower
      std::string w;
      for (const auto& e : chi_set)
        if (c.lam(e) < c.l && w.empty()) w = edge_str(e) + " lambda=" + std::to_string(c.lam(e));
      out.push_back(line("lambda_lower", w.empty(), w));
    }
    auto restrict_check = [&](bool minimum) {
      std::string w;
      for (size_t i = 0; i < M && w.empty(); ++i) {
        if (c.res[i] != (minimum ? c.l : c.L)) continue;
        for (const auto& e : c.ms[i].edges) {
          const auto& s = c.side(e);
          auto f1 = c.restrict_to(c.ms[i].edges, s.sp.map1);
          auto f2 = c.restrict_to(c.ms[i].edges, s.sp.map2);
          int q1 = residual_beta(s.sp.side1.graph(), f1), q2 = residual_beta(s.sp.side2.graph(), f2);
          int t1 = minimum ? s.s1.l : s.s1.L, t2 = minimum ? s.s2.l : s.s2.L;
          if ((q1 != t1 || q2 != t2) && w.empty()) w = format_edges(c.ms[i].edges) + " e=" + edge_str(e);
        }
      }
      return w;
    };
    {
      auto w = restrict_check(true);
      out.push_back(line("restrict_min", w.empty(), w));
    }
    {  // lambda_at_min
      std::string w;
      for (const auto& e : g.edges())
        if (pi_min[g.edge_index(e)] && c.lam(e) != c.l && w.empty()) w = edge_str(e);
      out.push_back(line("lambda_at_min", w.empty(), w));
    }
    if (chi_set.empty()) {
      na("chi_min");
    } else {
      int best = 1 << 30;
      for (const auto& e : chi_set) best = std::min(best, c.lam(e));
      out.push_back(line("chi_min", best == c.l, "min=" + std::to_string(best)));
    }
    {  // Lambda_upper
      std::string w;
      for (const auto& e : g.edges())
        if (pi[g.edge_index(e)] && c.Lam(e) > c.L && w.empty()) w = edge_str(e) + " Lambda=" + std::to_string(c.Lam(e));
      out.push_back(line("Lambda_upper", w.empty(), w));
    }
    {
      auto w = restrict_check(false);
      out.push_back(line("restrict_max", w.empty(), w));
    }
    {  // Lambda_at_max
      std::string w;
      for (const auto& e : g.edges())
        if (pi_max[g.edge_index(e)] && c.Lam(e) != c.L && w.empty()) w = edge_str(e);
      out.push_back(line("Lambda_at_max", w.empty(), w));
    }
    {  // theta_max
      int best = -1;
      for (const auto& e : c.theta)
        if (pi[g.edge_index(e)]) best = std::max(best, c.Lam(e));
      if (best < 0) na("theta_max");
      else out.push_back(line("theta_max", best == c.L, "max=" + std::to_string(best)));
    }
  }
  {  // leaf_min_mono, leaf_max_mono
    std::string wmin, wmax;
    int beta = beta_any(g);
    for (const auto& e : c.bar) {
      EdgeList rest;
      for (const auto& x : g.edges())
        if (x != e) rest.push_back(x);
      Graph ge(g.n(), rest);
      auto s = spectrum(ge, guard);
      bool drop = beta == 1 + beta_any(ge);
      bool okmin = drop ? c.l >= s.l : c.l <= 1 + s.l;
      bool okmax = drop ? c.L <= s.L : c.L >= s.L;
      if (!okmin && wmin.empty()) wmin = edge_str(e);
      if (!okmax && wmax.empty()) wmax = edge_str(e);
    }
    out.push_back(line("leaf_min_mono", wmin.empty(), wmin));
    out.push_back(line("leaf_max_mono", wmax.empty(), wmax));
  }
  {  // s_prime
    int eta = static_cast<int>(extend_pendant_matching(g).size());
    bool ok = false;
    for (size_t i = 0; i < M && !ok; ++i) {
      if (c.res[i] != c.l) continue;
      int k = 0;
      for (const auto& e : c.ms[i].edges) k += in_bar(e);
      ok = k == eta;
    }
    out.push_back(line("s_prime", ok, "eta=" + std::to_string(eta)));
  }
  if (!c.tree) {
    na("prec_characterisation");
  } else {
    // F in S(G,l) iff every F' reachable by prec1 steps has beta(G\F') >= beta(G\F)
    std::vector<std::vector<int>> nxt(M);
    for (size_t i = 0; i < M; ++i)
      for (size_t j = 0; j < M; ++j)
        if (i != j && prec1(g, c.ms[i], c.ms[j])) nxt[i].push_back(static_cast<int>(j));
    std::string w;
    for (size_t i = 0; i < M && w.empty(); ++i) {
      std::vector<char> seen(M, 0);
      std::vector<int> st(nxt[i].begin(), nxt[i].end());
      for (int j : st) seen[j] = 1;
      bool local_min = true;
      while (!st.empty()) {
        int j = st.back();
        st.pop_back();
        if (c.res[j] < c.res[i]) local_min = false;
        for (int k : nxt[j])
          if (!seen[k]) {
            seen[k] = 1;
            st.push_back(k);
          }
      }
      if (local_min != (c.res[i] == c.l)) w = format_edges(c.ms[i].edges);
    }
    out.push_back({"prec_characterisation", w.empty() ? "pass" : "flag", w});
  }
  return out;
}

std::string format_report(const std::vector<PropertyLine>& report) {
  std::ostringstream os;
  for (const auto& p : report) {
    os << p.id << " " << p.status;
    if (!p.witness.empty()) os << " " << p.witness;
    os << "\n";
  }
  return os.str();
}

}  // namespace resmatch
