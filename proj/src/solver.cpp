#include "resmatch/solver.hpp"

#include <pthread.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "resmatch/elementary.hpp"

namespace resmatch {

namespace {

struct Key {
  uint64_t a = 0, b = 0;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  size_t operator()(const Key& k) const { return static_cast<size_t>(k.a ^ (k.b * 0x9e3779b97f4a7c15ULL)); }
};

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-independent fingerprint of a global edge set.
void add_edge(Key& k, VertexId a, VertexId b) {
  uint64_t x = (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
  k.a += splitmix(x);
  k.b += splitmix(x ^ 0x5bd1e9955bd1e995ULL) * 3 + 1;
}

struct Sub {
  std::vector<VertexId> label;  // local -> global, ascending
  Graph g;
};

Key key_of(const Sub& t) {
  Key k;
  for (const auto& e : t.g.edges()) add_edge(k, t.label[e.a], t.label[e.b]);
  return k;
}

std::string describe(const Sub& t) {
  std::ostringstream os;
  for (const auto& e : t.g.edges()) os << ' ' << t.label[e.a] << '-' << t.label[e.b];
  return os.str();
}

int residual_value(const Graph& g, const EdgeList& f) { return beta_value(remove_matching(g, Matching(f))); }

// Same value, pendant edges exchanged at shared supports so that gamma is contained.
EdgeList adapt_gamma(const Graph& g, EdgeList f, const EdgeList& gamma) {
  std::vector<int> mate(g.n(), -1);
  for (const auto& e : f) mate[e.a] = e.b, mate[e.b] = e.a;
  bool changed = false;
  for (const auto& e : gamma) {
    if (mate[e.a] == e.b) continue;
    const VertexId s = g.deg(e.a) == 1 ? e.b : e.a, w = e.other(s);
    const VertexId old = mate[s];
    if (old < 0 || g.deg(old) != 1 || mate[w] >= 0) throw DefectError("cached witness cannot take the pendant matching");
    mate[old] = -1;
    mate[s] = w;
    mate[w] = s;
    changed = true;
  }
  if (!changed) return f;
  f.clear();
  for (int v = 0; v < g.n(); ++v)
    if (mate[v] > v) f.emplace_back(v, mate[v]);
  return f;
}

// Every sub forest is smaller; STRIP removes two or more vertices, CUT drops an edge.
void check_progress(const Graph& g, const ReductionStep& s) {
  for (const auto& sp : s.subs) {
    const int kept = static_cast<int>(sp.keep.size());
    bool ok = kept < g.n() || !sp.drop.empty();
    if (s.action == Action::Strip) ok = kept <= g.n() - 2;
    if (s.action == Action::Cut) ok = !sp.drop.empty() || kept <= g.n() - 2;
    if (s.action == Action::Split) ok = kept < g.n();
    if (!ok) throw DefectError(s.rule + ": subproblem does not shrink");
  }
}

class Engine {
 public:
  Engine(const SolveOptions& opt, SolveStats& stats, std::vector<std::string>* trace)
      : opt_(opt), stats_(stats), trace_(trace) {}

  SubResult solve_min(const Sub& t, const EdgeList& gamma, bool primary) {
    ++stats_.calls;
    if (t.g.n() <= 1) return {};
    const Key key = key_of(t);
    if (auto it = memo_[0].find(key); it != memo_[0].end()) {
      ++stats_.memo_hits;
      note(primary, "memo - HIT " + std::to_string(t.g.n()) + " -");
      return {adapt_gamma(t.g, it->second.f, gamma), it->second.value};
    }
    SubResult res;
    const int beta = beta_value(t.g);
    if (static_cast<int>(gamma.size()) == beta) {
      res = {gamma, residual_value(t.g, gamma)};
      note(primary, "pendant_cover - BASE " + std::to_string(t.g.n()) + " -");
    } else if (auto d = is_elementary(t.g)) {
      auto r = solve_elementary_min(t.g, *d, Matching(gamma));
      res = {r.f.edges, r.value};
      note(primary, "elementary - BASE " + std::to_string(t.g.n()) + " -");
    } else {
      auto ctx = locate_branch(t.g);
      ValueFn l = [&](const std::vector<VertexId>& keep) { return forest_value(t, keep, Objective::Min); };
      auto step = select_min_rule(t.g, gamma, &ctx, l, opt_.prefer_rules);
      if (!step) {
        res = fallback(t, Objective::Min, gamma, std::nullopt);
        note(primary, "oracle_fallback - BASE " + std::to_string(t.g.n()) + " -");
      } else {
        note(primary, format_step(*step));
        std::vector<SubResult> subs;
        check_progress(t.g, *step);
        for (const auto& sp : step->subs) subs.push_back(solve_sub(t, sp, Objective::Min, gamma, primary));
        res = apply_step(t.g, *step, subs);
        if (step->rule == opt_.broken_rule) ++res.value;
      }
    }
    memo_[0].emplace(key, res);
    return res;
  }

  SubResult solve_max(const Sub& t, std::optional<Edge> forced, bool primary) {
    ++stats_.calls;
    if (t.g.n() <= 1) return {};
    const Edge e = forced ? *forced : default_pendant_edge(t.g);
    const Key key = key_of(t);
    SubResult res;
    if (auto it = memo_[1].find(key); it != memo_[1].end()) {
      ++stats_.memo_hits;
      note(primary, "memo - HIT " + std::to_string(t.g.n()) + " -");
      res = it->second;
      if (!std::binary_search(res.f.begin(), res.f.end(), e)) res.f = force_edge(t.g, Matching(res.f), e).edges;
      return res;
    }
    if (auto d = is_elementary(t.g)) {
      auto r = solve_elementary_max(t.g, *d, e);
      res = {r.f.edges, r.value};
      note(primary, "elementary - BASE " + std::to_string(t.g.n()) + " -");
    } else {
      auto ctx = locate_branch(t.g);
      ValueFn L = [&](const std::vector<VertexId>& keep) { return forest_value(t, keep, Objective::Max); };
      auto step = select_max_rule(t.g, &ctx, L, opt_.prefer_rules);
      if (!step) {
        res = fallback(t, Objective::Max, {}, e);
        note(primary, "oracle_fallback - BASE " + std::to_string(t.g.n()) + " -");
      } else {
        note(primary, format_step(*step));
        std::vector<SubResult> subs;
        check_progress(t.g, *step);
        for (const auto& sp : step->subs) subs.push_back(solve_sub(t, sp, Objective::Max, {}, primary));
        res = apply_step(t.g, *step, subs);
        if (step->rule == opt_.broken_rule) ++res.value;
      }
    }
    if (!std::binary_search(res.f.begin(), res.f.end(), e)) res.f = force_edge(t.g, Matching(res.f), e).edges;
    memo_[1].emplace(key, res);
    return res;
  }

  int forest_value(const Sub& t, const std::vector<VertexId>& keep, Objective obj) {
    ++stats_.value_queries;
    const int n = t.g.n();
    std::vector<int> mark(n, 0);  // 1 = kept, 2 = visited
    for (int v : keep) mark[v] = 1;
    int total = 0;
    std::vector<VertexId> comp, stack;
    for (int s : keep) {
      if (mark[s] != 1) continue;
      comp.clear();
      stack.assign(1, s);
      mark[s] = 2;
      Key k;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w : t.g.adj(v)) {
          if (mark[w] == 0) continue;
          if (v < w) add_edge(k, t.label[v], t.label[w]);
          if (mark[w] == 1) {
            mark[w] = 2;
            stack.push_back(w);
          }
        }
      }
      if (comp.size() <= 2) continue;
      auto& memo = memo_[obj == Objective::Min ? 0 : 1];
      if (auto it = memo.find(k); it != memo.end()) {
        ++stats_.memo_hits;
        total += it->second.value;
        continue;
      }
      std::sort(comp.begin(), comp.end());
      Sub c;
      for (int v : comp) c.label.push_back(t.label[v]);
      c.g = induced(t.g, comp);
      total += obj == Objective::Min ? solve_min(c, extend_pendant_matching(c.g), false).value
                                     : solve_max(c, std::nullopt, false).value;
    }
    return total;
  }

 private:
  SubResult solve_sub(const Sub& parent, const Subproblem& sp, Objective obj, const EdgeList& gamma, bool primary) {
    Graph h = induced(parent.g, sp.keep, sp.drop);
    std::vector<int> to_h(parent.g.n(), -1);
    for (size_t i = 0; i < sp.keep.size(); ++i) to_h[sp.keep[i]] = static_cast<int>(i);
    SubResult out;
    for (const auto& comp : components(h)) {
      std::vector<int> to_c(h.n(), -1);
      for (size_t i = 0; i < comp.size(); ++i) to_c[comp[i]] = static_cast<int>(i);
      auto local = [&](VertexId p) { return to_h[p] < 0 ? -1 : to_c[to_h[p]]; };
      Sub c;
      for (int x : comp) c.label.push_back(parent.label[sp.keep[x]]);
      c.g = induced(h, comp);
      SubResult r;
      if (obj == Objective::Min) {
        EdgeList seed;
        for (const auto& e : gamma) {
          int a = local(e.a), b = local(e.b);
          if (a >= 0 && b >= 0 && c.g.has_edge(Edge(a, b))) seed.emplace_back(a, b);
        }
        r = solve_min(c, extend_pendant_matching(c.g, seed), primary);
      } else {
        std::optional<Edge> f;
        if (sp.forced) {
          int a = local(sp.forced->a), b = local(sp.forced->b);
          if (a >= 0 && b >= 0) f = Edge(a, b);
        }
        r = solve_max(c, f, primary);
      }
      for (const auto& e : r.f) out.f.emplace_back(sp.keep[comp[e.a]], sp.keep[comp[e.b]]);
      out.value += r.value;
    }
    std::sort(out.f.begin(), out.f.end());
    return out;
  }

  SubResult fallback(const Sub& t, Objective obj, const EdgeList& gamma, std::optional<Edge> e) {
    std::string msg = std::string("no reduction rule matched (") + objective_name(obj) + ") on" + describe(t);
    if (!opt_.oracle_fallback || t.g.n() > opt_.guard.tree_vertices) throw NonExhaustiveCaseAnalysis(msg);
    ++stats_.fallbacks;
    auto sp = spectrum(t.g, opt_.guard);
    const int target = obj == Objective::Min ? sp.l : sp.L;
    for (const auto& f : enumerate_maximum_matchings(t.g, opt_.guard)) {
      if (residual_value(t.g, f.edges) != target) continue;
      if (obj == Objective::Max && !f.contains(*e)) continue;
      if (obj == Objective::Min) {
        bool ok = std::all_of(gamma.begin(), gamma.end(), [&](Edge x) { return f.contains(x); });
        int pendant = 0;
        for (const auto& x : f.edges)
          if (t.g.deg(x.a) == 1 || t.g.deg(x.b) == 1) ++pendant;
        if (!ok || pendant != static_cast<int>(gamma.size())) continue;
      }
      return {f.edges, target};
    }
    throw NonExhaustiveCaseAnalysis(msg + " (oracle found no admissible witness)");
  }

  void note(bool primary, std::string line) {
    if (primary && trace_) trace_->push_back(std::move(line));
  }

  const SolveOptions& opt_;
  SolveStats& stats_;
  std::vector<std::string>* trace_;
  std::unordered_map<Key, SubResult, KeyHash> memo_[2];  // witness per subtree
};

// Deep recursion on long paths; run on a thread with a large stack.
void run_with_stack(const std::function<void()>& fn) {
  struct Box {
    const std::function<void()>* fn;
    std::exception_ptr err;
  } box{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, size_t{1} << 30);
  pthread_t th;
  auto body = [](void* p) -> void* {
    auto* b = static_cast<Box*>(p);
    try {
      (*b->fn)();
    } catch (...) {
      b->err = std::current_exception();
    }
    return nullptr;
  };
  if (pthread_create(&th, &attr, body, &box) != 0) {
    pthread_attr_destroy(&attr);
    fn();
    return;
  }
  pthread_join(th, nullptr);
  pthread_attr_destroy(&attr);
  if (box.err) std::rethrow_exception(box.err);
}

Sub whole(const Graph& g) {
  Sub s;
  s.label.resize(g.n());
  for (int v = 0; v < g.n(); ++v) s.label[v] = v;
  s.g = g;
  return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string objective_name(Objective o) { return o == Objective::Min ? "min" : "max"; }

Edge default_pendant_edge(const Graph& t) {
  for (int v = 0; v < t.n(); ++v)
    if (t.deg(v) == 1) return Edge(v, t.adj(v)[0]);
  throw InputError("graph has no pendant edge");
}

SolveReport minmax(const Tree& t, const SolveOptions& opt) {
  SolveReport r;
  r.objective = Objective::Min;
  r.n = t.n();
  auto t0 = std::chrono::steady_clock::now();
  run_with_stack([&] {
    Engine eng(opt, r.stats, opt.trace ? &r.trace : nullptr);
    auto res = eng.solve_min(whole(t.graph()), extend_pendant_matching(t.graph()), true);
    r.value = res.value;
    r.witness = Matching(res.f);
  });
  r.stats.elapsed_ms = ms_since(t0);
  return r;
}

SolveReport maxmax(const Tree& t, std::optional<Edge> e, const SolveOptions& opt) {
  SolveReport r;
  r.objective = Objective::Max;
  r.n = t.n();
  if (t.n() <= 1) {
    if (e) throw InputError("edge is not a pendant edge of the tree");
    return r;
  }
  if (e) {
    if (!t.has_edge(*e)) throw InputError("edge is not in the tree");
    if (t.deg(e->a) != 1 && t.deg(e->b) != 1) throw InputError("edge is not a pendant edge of the tree");
  } else {
    e = default_pendant_edge(t.graph());
  }
  r.requested = e;
  auto t0 = std::chrono::steady_clock::now();
  run_with_stack([&] {
    Engine eng(opt, r.stats, opt.trace ? &r.trace : nullptr);
    auto res = eng.solve_max(whole(t.graph()), e, true);
    r.value = res.value;
    r.witness = Matching(res.f);
  });
  r.stats.elapsed_ms = ms_since(t0);
  return r;
}

namespace {

int forest_total(const Graph& forest, bool is_min) {
  int total = 0;
  for (const auto& comp : components(forest)) {
    if (comp.size() <= 2) continue;
    Tree t = validate_tree(induced(forest, comp));
    total += is_min ? minmax(t).value : maxmax(t).value;
  }
  return total;
}

}  // namespace

int min_value(const Graph& forest) { return forest_total(forest, true); }
int max_value(const Graph& forest) { return forest_total(forest, false); }

Matching force_edge(const Graph& t, const Matching& f, Edge e) {
  if (f.contains(e)) return f;
  if (!t.has_edge(e) || (t.deg(e.a) != 1 && t.deg(e.b) != 1)) throw InputError("force_edge: edge is not pendant");
  const VertexId x = t.deg(e.a) == 1 ? e.a : e.b;
  const VertexId s = e.other(x);
  Graph residual = remove_matching(t, f);
  EdgeList rest;
  for (const auto& g : residual.edges())
    if (!g.touches(x) && !g.touches(s)) rest.push_back(g);
  EdgeList h = beta_tree(Graph(t.n(), rest)).witness.edges;
  h.push_back(e);
  if (static_cast<int>(h.size()) != beta_value(residual))
    throw DefectError("force_edge: no maximum matching of the residual contains the edge");
  std::vector<int> mate_f(t.n(), -1), mate_h(t.n(), -1);
  for (const auto& g : f.edges) mate_f[g.a] = g.b, mate_f[g.b] = g.a;
  for (const auto& g : h) mate_h[g.a] = g.b, mate_h[g.b] = g.a;
  EdgeList out_f, in_h{e};
  VertexId v = s;
  while (true) {
    VertexId w = mate_f[v];
    if (w < 0) throw DefectError("force_edge: matching is not maximum");
    out_f.emplace_back(v, w);
    VertexId z = mate_h[w];
    if (z < 0) break;
    in_h.emplace_back(w, z);
    v = z;
  }
  EdgeList next;
  std::sort(out_f.begin(), out_f.end());
  for (const auto& g : f.edges)
    if (!std::binary_search(out_f.begin(), out_f.end(), g)) next.push_back(g);
  next.insert(next.end(), in_h.begin(), in_h.end());
  Matching result(next);
  if (!is_matching_of(t, result.edges) || result.size() != f.size())
    throw DefectError("force_edge: swap did not produce a maximum matching");
  if (beta_value(remove_matching(t, result)) != beta_value(residual))
    throw DefectError("force_edge: residual value changed");
  return result;
}

Certificate verify(const Tree& t, const SolveReport& r, const OracleGuard& guard) {
  Certificate c;
  auto fail = [&](std::string m) {
    c.ok = false;
    c.failures.push_back(std::move(m));
  };
  const Graph& g = t.graph();
  if (!is_matching_of(g, r.witness.edges)) {
    fail("not a matching");
    return c;
  }
  if (static_cast<int>(r.witness.size()) != beta_value(g)) fail("not maximum");
  if (beta_value(remove_matching(g, r.witness)) != r.value) fail("value inconsistent with witness");
  if (r.objective == Objective::Min) {
    auto gamma = build_gamma(g);
    for (const auto& e : gamma.edges)
      if (!r.witness.contains(e)) {
        fail("pendant matching not contained");
        break;
      }
    int pendant = 0;
    for (const auto& e : r.witness.edges)
      if (g.deg(e.a) == 1 || g.deg(e.b) == 1) ++pendant;
    if (pendant != static_cast<int>(gamma.size())) fail("pendant edge count differs from eta");
  } else if (r.requested && !r.witness.contains(*r.requested)) {
    fail("requested edge missing");
  }
  if (t.n() <= guard.tree_vertices) {
    auto sp = spectrum(g, guard);
    c.oracle_checked = true;
    c.oracle_value = r.objective == Objective::Min ? sp.l : sp.L;
    if (*c.oracle_value != r.value) fail("value differs from oracle");
  }
  return c;
}

std::string serialize(const SolveReport& r, bool with_timing) {
  std::ostringstream os;
  os << "objective " << objective_name(r.objective) << '\n';
  os << "n " << r.n << '\n';
  os << "value " << r.value << '\n';
  os << "witness " << r.witness.size() << '\n';
  for (const auto& e : r.witness.edges) os << e.a << ' ' << e.b << '\n';
  os << "trace " << r.trace.size() << '\n';
  for (const auto& line : r.trace) os << line << '\n';
  os << "stats calls=" << r.stats.calls << " memo_hits=" << r.stats.memo_hits
     << " value_queries=" << r.stats.value_queries << " fallbacks=" << r.stats.fallbacks << '\n';
  if (r.oracle_certificate)
    os << "oracle value=" << r.oracle_certificate->oracle_value << " match=" << (r.oracle_certificate->match ? 1 : 0)
       << '\n';
  if (with_timing) os << "elapsed_ms " << r.stats.elapsed_ms << '\n';
  return os.str();
}

}  // namespace resmatch
