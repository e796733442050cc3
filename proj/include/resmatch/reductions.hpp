#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resmatch/matching.hpp"

namespace resmatch {

enum class Objective { Min, Max };
enum class Action { Strip, Cut, Split };

const char* action_name(Action a);

struct GuardValue {
  std::string name;
  long value = 0;
};

// One recursive call: the forest induced on `keep` minus `drop`, over the caller's ids.
struct Subproblem {
  std::vector<VertexId> keep;  // sorted
  EdgeList drop;
  std::optional<Edge> forced;  // MAX only
};

struct ReductionStep {
  std::string rule;
  char letter = '-';
  Action action = Action::Strip;
  std::vector<VertexId> u;
  std::vector<std::pair<std::string, Edge>> named;
  std::vector<Subproblem> subs;
  EdgeList extension;
  std::optional<int> value_delta;  // set when the rule fixes value = sum(sub values) + delta
  std::vector<GuardValue> guards;
};

// "ruleId caseLetter action subSizes guardValues"
std::string format_step(const ReductionStep& s);

struct Arm {
  std::vector<VertexId> vertices;  // outward from the branch vertex
  bool clean = false;
  int length() const { return static_cast<int>(vertices.size()); }
};

struct BranchContext {
  VertexId vbar = -1;
  int reduced_degree = 0;
  std::vector<Arm> arms;  // by smallest member
};

// Sum of l (MIN) or L (MAX) over the components of the forest on `keep` (sorted ids).
using ValueFn = std::function<int(const std::vector<VertexId>& keep)>;

Matching build_gamma(const Graph& t);
inline Matching build_gamma(const Tree& t) { return build_gamma(t.graph()); }

// Throws InputError when the tree is elementary.
BranchContext locate_branch(const Graph& t);
inline BranchContext locate_branch(const Tree& t) { return locate_branch(t.graph()); }

// Rules named in `prefer` are tried first, anywhere in the tree.
std::optional<ReductionStep> select_min_rule(const Graph& t, const EdgeList& gamma, const BranchContext* ctx,
                                             const ValueFn& l, const std::vector<std::string>& prefer = {});
std::optional<ReductionStep> select_max_rule(const Graph& t, const BranchContext* ctx, const ValueFn& L,
                                             const std::vector<std::string>& prefer = {});
std::vector<std::string> rule_ids(Objective obj);

struct SubResult {
  EdgeList f;  // over the caller's ids
  int value = 0;
};

// Union of the sub matchings and the extension; checks matching, size beta(t) and the value identity.
SubResult apply_step(const Graph& t, const ReductionStep& step, const std::vector<SubResult>& subs);

// Vertex-disjoint pattern embedding; the callback returns true to stop.
struct Pattern {
  int k = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> deg;  // exact host degree or -1
};
void embed(const Graph& g, const Pattern& p, const std::function<bool(const std::vector<VertexId>&)>& cb);

bool is_support(const Graph& g, VertexId v);
bool is_deep(const Graph& g, Edge e);

}  // namespace resmatch
