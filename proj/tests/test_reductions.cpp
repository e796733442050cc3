#include <doctest.h>

#include <map>
#include <set>

#include "resmatch/elementary.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/reductions.hpp"
#include "resmatch/solver.hpp"
#include "support.hpp"

using namespace resmatch;
using namespace resmatch::testing;

namespace {

ValueFn oracle_values(const Graph& g, Objective obj) {
  return [&g, obj](const std::vector<VertexId>& keep) {
    Graph h = induced(g, keep);
    int total = 0;
    for (const auto& c : components(h)) {
      auto sp = spectrum(induced(h, c));
      total += obj == Objective::Min ? sp.l : sp.L;
    }
    return total;
  };
}

}  // namespace

TEST_CASE("spider10 dispatch") {
  Tree t = spider10();
  Matching gamma = build_gamma(t);
  auto ctx = locate_branch(t);
  CHECK(ctx.vbar == 0);
  CHECK(ctx.arms.size() == 3);
  auto mn = select_min_rule(t.graph(), gamma.edges, &ctx, oracle_values(t.graph(), Objective::Min));
  REQUIRE(mn);
  CHECK(mn->rule == "min_arm33");
  CHECK(mn->letter == 'c');
  CHECK(mn->action == Action::Cut);
  auto mx = select_max_rule(t.graph(), &ctx, oracle_values(t.graph(), Objective::Max));
  REQUIRE(mx);
  CHECK(mx->rule == "max_arm_strip");
  CHECK_THROWS_AS(locate_branch(make_path(6)), InputError);
}

TEST_CASE("guard evaluation is reproducible") {
  for (uint64_t s = 0; s < 60; ++s) {
    Tree t = random_tree(8 + static_cast<int>(s % 7), s);
    if (is_elementary(t)) continue;
    auto ctx = locate_branch(t);
    Matching gamma = build_gamma(t);
    auto a = select_min_rule(t.graph(), gamma.edges, &ctx, oracle_values(t.graph(), Objective::Min));
    auto b = select_min_rule(t.graph(), gamma.edges, &ctx, oracle_values(t.graph(), Objective::Min));
    REQUIRE(a);
    REQUIRE(b);
    CHECK(format_step(*a) == format_step(*b));
    auto c = select_max_rule(t.graph(), &ctx, oracle_values(t.graph(), Objective::Max));
    auto d = select_max_rule(t.graph(), &ctx, oracle_values(t.graph(), Objective::Max));
    REQUIRE(c);
    CHECK(format_step(*c) == format_step(*d));
  }
}

TEST_CASE("embedding enumerates every injective placement") {
  Pattern p3{3, {{0, 1}, {1, 2}}, {-1, -1, -1}};
  for (uint64_t s = 0; s < 40; ++s) {
    Tree t = random_tree(2 + static_cast<int>(s % 9), s);
    long found = 0;
    embed(t.graph(), p3, [&](const std::vector<VertexId>& u) {
      CHECK(t.has_edge(Edge(u[0], u[1])));
      CHECK(t.has_edge(Edge(u[1], u[2])));
      ++found;
      return false;
    });
    long want = 0;
    for (int v = 0; v < t.n(); ++v) want += static_cast<long>(t.deg(v)) * (t.deg(v) - 1);
    CHECK(found == want);
  }
}

TEST_CASE("recombination rejects a broken step") {
  Tree t = make_path(4);
  ReductionStep s;
  s.rule = "fixture";
  s.extension = {Edge(0, 1)};
  CHECK_THROWS_AS(apply_step(t.graph(), s, {}), DefectError);
  s.extension = {Edge(0, 1), Edge(2, 3)};
  s.value_delta = 5;
  CHECK_THROWS_AS(apply_step(t.graph(), s, {}), DefectError);
  s.value_delta = 1;
  CHECK(apply_step(t.graph(), s, {}).value == 1);
}

TEST_CASE("every rule agrees with the oracles when forced first") {
  std::map<std::string, std::set<char>> fired;
  auto tally = [&](const std::string& id, const SolveReport& r) {
    for (const auto& line : r.trace)
      if (line.rfind(id + " ", 0) == 0) fired[id].insert(line[id.size() + 1]);
  };
  for (Objective obj : {Objective::Min, Objective::Max})
    for (const auto& id : rule_ids(obj)) {
      CAPTURE(id);
      SolveOptions opt;
      opt.trace = true;
      opt.prefer_rules = {id};
      auto solve = [&](const Tree& t) { return obj == Objective::Min ? minmax(t, opt) : maxmax(t, std::nullopt, opt); };
      for (int kind = 0; kind < kShapeKinds; ++kind) {
        for (int n : {5, 7, 9})
          for (int i = 0; i < 12; ++i) {
            Tree t = shaped_tree(kind, n, instance_seed(40 + kind, n, i));
            if (t.n() > 15) continue;
            auto r = solve(t);
            auto c = verify(t, r);
            CAPTURE(to_edge_list(t.graph()));
            CHECK(c.oracle_checked);
            CHECK(c.ok);
            tally(id, r);
          }
        for (int i = 0; i < 8; ++i) {
          Tree t = shaped_tree(kind, 14 + 3 * i, instance_seed(90 + kind, 0, i));
          auto [lo, hi] = dp_min_max(t.graph());
          auto r = solve(t);
          CAPTURE(to_edge_list(t.graph()));
          CHECK(r.value == (obj == Objective::Min ? lo : hi));
          CHECK(verify(t, r).ok);
          tally(id, r);
        }
      }
      CHECK(fired.count(id) == 1);
    }
}
