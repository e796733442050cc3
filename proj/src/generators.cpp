#include "resmatch/generators.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <random>

#include "resmatch/matching.hpp"
#include "resmatch/oracle.hpp"

namespace resmatch {

namespace {

void need(bool ok, const char* what) {
  if (!ok) throw InputError(std::string("degenerate parameters: ") + what);
}

std::map<std::string, FamilyBuilder>& registry() {
  static std::map<std::string, FamilyBuilder> r;
  return r;
}

}  // namespace

Tree make_path(int n) {
  need(n >= 1, "path needs n >= 1");
  EdgeList e;
  for (int i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return validate_tree(Graph(n, e));
}

Tree make_star(int leaves) {
  need(leaves >= 1, "star needs at least one leaf");
  EdgeList e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return validate_tree(Graph(leaves + 1, e));
}

Tree make_spider(int legs, int leg_len) {
  need(legs >= 1 && leg_len >= 1, "spider needs legs >= 1 and leg length >= 1");
  EdgeList e;
  int next = 1;
  for (int l = 0; l < legs; ++l) {
    int prev = 0;
    for (int i = 0; i < leg_len; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
  }
  return validate_tree(Graph(next, e));
}

Tree make_caterpillar(int spine, const std::vector<int>& leaf_pattern) {
  need(spine >= 1, "caterpillar needs a spine");
  need(leaf_pattern.size() <= static_cast<size_t>(spine), "leaf pattern longer than spine");
  EdgeList e;
  for (int i = 1; i < spine; ++i) e.emplace_back(i - 1, i);
  int next = spine;
  for (size_t i = 0; i < leaf_pattern.size(); ++i) {
    need(leaf_pattern[i] >= 0, "negative leaf count");
    for (int j = 0; j < leaf_pattern[i]; ++j) e.emplace_back(static_cast<int>(i), next++);
  }
  return validate_tree(Graph(next, e));
}

Tree make_broom(int handle, int bristles) {
  need(handle >= 1 && bristles >= 0, "broom needs handle >= 1");
  std::vector<int> pattern(handle, 0);
  pattern[handle - 1] = bristles;
  return make_caterpillar(handle, pattern);
}

Tree random_tree(int n, uint64_t seed) {
  need(n >= 1, "random tree needs n >= 1");
  if (n == 1) return validate_tree(Graph(1, {}));
  if (n == 2) return validate_tree(Graph(2, {Edge(0, 1)}));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(n - 2), degree(n, 1);
  for (int& c : code) {
    c = pick(rng);
    ++degree[c];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  EdgeList e;
  for (int c : code) {
    int leaf = leaves.top();
    leaves.pop();
    e.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  int a = leaves.top();
  leaves.pop();
  e.emplace_back(a, leaves.top());
  return validate_tree(Graph(n, e));
}

uint64_t instance_seed(uint64_t seed, int n, int index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(n),
                    static_cast<uint32_t>(index)};
  std::vector<uint32_t> out(2);
  seq.generate(out.begin(), out.end());
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

std::string canonical_form(const Graph& t) {
  if (t.n() == 0) return "";
  auto pl = peel_levels(t);
  const auto& centers = pl.levels.back();
  std::function<std::string(int, int)> enc = [&](int v, int parent) {
    std::vector<std::string> kids;
    for (int w : t.adj(v))
      if (w != parent) kids.push_back(enc(w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
  };
  if (centers.size() == 1) return enc(centers[0], -1);
  // two adjacent centers: encode as the edge between them
  std::string a = enc(centers[0], centers[1]), b = enc(centers[1], centers[0]);
  if (b < a) std::swap(a, b);
  return "[" + a + b + "]";
}

void register_family(const std::string& name, FamilyBuilder builder) { registry()[name] = std::move(builder); }

bool family_registered(const std::string& name) { return registry().count(name) > 0; }

FamilyInstance example_family(const std::string& name, int k) {
  auto it = registry().find(name);
  if (it == registry().end()) throw InputError("unavailable: figure missing");
  FamilyInstance inst = it->second(k);
  auto sp = spectrum(inst.graph);
  for (const auto& [claim, value] : inst.claims) {
    long got = 0;
    if (claim == "l") got = sp.l;
    else if (claim == "L") got = sp.L;
    else if (claim == "beta") got = beta_general(inst.graph);
    else if (claim == "perfect_matchings")
      got = 2 * beta_general(inst.graph) == inst.graph.n() ? static_cast<long>(sp.count) : 0;
    else throw InputError("unknown claim " + claim);
    if (got != value)
      throw DefectError("family " + name + " rejected: " + claim + " = " + std::to_string(got) + ", claimed " +
                        std::to_string(value));
  }
  return inst;
}

}  // namespace resmatch
