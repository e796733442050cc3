#include "resmatch/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <sstream>

namespace resmatch {

Graph::Graph(int n, EdgeList edges) : n_(n), edges_(std::move(edges)), adj_(n) {
  for (auto& e : edges_) {
    if (e.a == e.b) throw InputError("self-loop at vertex " + std::to_string(e.a));
    if (e.a < 0 || e.b >= n_) throw InputError("edge endpoint out of range");
    e = Edge(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1])
      throw InputError("duplicate edge " + std::to_string(edges_[i].a) + " " +
                       std::to_string(edges_[i].b));
  for (const auto& e : edges_) {
    adj_[e.a].push_back(e.b);
    adj_[e.b].push_back(e.a);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(Edge e) const { return edge_index(e) >= 0; }

int Graph::edge_index(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

namespace {

bool parse_uint(std::string_view tok, long& out) {
  if (tok.empty()) return false;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size() && out >= 0;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  EdgeList edges;
  long max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string a, b, extra;
    ss >> a >> b;
    long u = 0, v = 0;
    if (!parse_uint(a, u) || !parse_uint(b, v) || (ss >> extra))
      throw InputError("malformed edge at line " + std::to_string(lineno));
    if (u == v) throw InputError("self-loop at line " + std::to_string(lineno));
    if (std::max(u, v) > 10'000'000) throw InputError("vertex id too large at line " + std::to_string(lineno));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max({max_id, u, v});
  }
  return Graph(static_cast<int>(max_id + 1), std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
  std::string out;
  for (const auto& e : g.edges()) out += std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  return out;
}

Tree validate_tree(const Graph& g) {
  if (g.n() == 0) throw InputError("not a tree: empty graph");
  if (g.m() >= g.n()) throw InputError("not a tree: cycle present");
  if (components(g).size() != 1) throw InputError("not a tree: disconnected");
  return Tree(g);
}

std::pair<EdgeList, EdgeList> edge_partition(const Graph& g) {
  EdgeList theta, theta_bar;
  for (const auto& e : g.edges())
    (g.deg(e.a) >= 2 && g.deg(e.b) >= 2 ? theta : theta_bar).push_back(e);
  return {theta, theta_bar};
}

std::pair<std::vector<VertexId>, EdgeList> border_and_deep(const Graph& g) {
  std::vector<char> in_theta_v(g.n(), 0), in_bar_v(g.n(), 0);
  for (const auto& e : g.edges()) {
    bool th = g.deg(e.a) >= 2 && g.deg(e.b) >= 2;
    auto& mark = th ? in_theta_v : in_bar_v;
    mark[e.a] = mark[e.b] = 1;
  }
  std::vector<VertexId> border;
  for (int v = 0; v < g.n(); ++v)
    if (in_theta_v[v] && in_bar_v[v]) border.push_back(v);
  std::vector<char> is_border(g.n(), 0);
  for (int v : border) is_border[v] = 1;
  EdgeList deep;
  for (const auto& e : g.edges())
    if (g.deg(e.a) >= 2 && g.deg(e.b) >= 2 && !is_border[e.a] && !is_border[e.b]) deep.push_back(e);
  return {border, deep};
}

std::vector<VertexId> side_vertices(const Graph& g, VertexId x, VertexId y) {
  std::vector<char> seen(g.n(), 0);
  std::vector<VertexId> out{x}, stack{y};
  seen[x] = seen[y] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int w : g.adj(v))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SplitPair split_at_edge(const Tree& t, Edge e) {
  if (!t.has_edge(e)) throw InputError("edge not in tree");
  SplitPair sp;
  sp.e = e;
  // side1 = component of a in t - e, plus b
  sp.map1 = side_vertices(t.graph(), e.b, e.a);
  sp.map2 = side_vertices(t.graph(), e.a, e.b);
  sp.side1 = validate_tree(induced(t.graph(), sp.map1));
  sp.side2 = validate_tree(induced(t.graph(), sp.map2));
  return sp;
}

PeelLevels peel_levels(const Graph& g) {
  PeelLevels out;
  out.k.assign(g.n(), -1);
  std::vector<int> deg(g.n());
  for (int v = 0; v < g.n(); ++v) deg[v] = g.deg(v);
  std::vector<VertexId> cur;
  int remaining = g.n();
  for (int v = 0; v < g.n(); ++v)
    if (deg[v] <= 1) cur.push_back(v);
  while (remaining > 0) {
    if (cur.empty()) {
      // only cycles remain (non-forest input); put them on one level
      for (int v = 0; v < g.n(); ++v)
        if (out.k[v] < 0) cur.push_back(v);
    }
    int lvl = static_cast<int>(out.levels.size());
    for (int v : cur) out.k[v] = lvl;
    remaining -= static_cast<int>(cur.size());
    std::vector<VertexId> next;
    for (int v : cur)
      for (int w : g.adj(v))
        if (out.k[w] < 0 && --deg[w] <= 1 && deg[w] >= 0) next.push_back(w);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::sort(cur.begin(), cur.end());
    out.levels.push_back(std::move(cur));
    cur = std::move(next);
  }
  return out;
}

int distance(const Graph& g, VertexId u, VertexId v) {
  std::vector<int> dist(g.n(), -1);
  std::queue<int> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) return dist[x];
    for (int w : g.adj(x))
      if (dist[w] < 0) {
        dist[w] = dist[x] + 1;
        q.push(w);
      }
  }
  return -1;
}

Graph induced(const Graph& g, const std::vector<VertexId>& keep, const EdgeList& drop) {
  std::vector<int> local(g.n(), -1);
  for (size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  EdgeList edges;
  for (const auto& e : g.edges()) {
    if (local[e.a] < 0 || local[e.b] < 0) continue;
    if (!drop.empty() && std::find(drop.begin(), drop.end(), e) != drop.end()) continue;
    edges.emplace_back(local[e.a], local[e.b]);
  }
  return Graph(static_cast<int>(keep.size()), std::move(edges));
}

std::vector<std::vector<VertexId>> components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<VertexId>> out;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<VertexId> c, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      c.push_back(v);
      for (int w : g.adj(v))
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<VertexId> leaves(const Graph& g) {
  std::vector<VertexId> out;
  for (int v = 0; v < g.n(); ++v)
    if (g.deg(v) == 1) out.push_back(v);
  return out;
}

}  // namespace resmatch
