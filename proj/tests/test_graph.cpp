#include <doctest.h>

#include <set>

#include "resmatch/generators.hpp"
#include "resmatch/graph.hpp"
#include "support.hpp"

using namespace resmatch;
using resmatch::testing::tree_of;

TEST_CASE("edge list parsing") {
  Graph g = parse_edge_list("# header\n0 1\n\n 2 1 \n1 3\r\n");
  CHECK(g.n() == 4);
  CHECK(g.m() == 3);
  CHECK(g.has_edge(Edge(2, 1)));
  CHECK(to_edge_list(g) == "0 1\n1 2\n1 3\n");
  CHECK(to_edge_list(parse_edge_list(to_edge_list(g))) == to_edge_list(g));

  CHECK_THROWS_AS(parse_edge_list("0 1\n1 x\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list("0 -1\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list("3 3\n"), InputError);
  CHECK_THROWS_AS(parse_edge_list("0 1\n1 0\n"), InputError);
}

TEST_CASE("validate_tree rejects non-trees") {
  CHECK_THROWS_WITH_AS(validate_tree(parse_edge_list("0 1\n1 2\n2 0\n")), doctest::Contains("not a tree"), InputError);
  CHECK_THROWS_WITH_AS(validate_tree(parse_edge_list("0 1\n2 3\n")), doctest::Contains("not a tree"), InputError);
  CHECK_THROWS_AS(validate_tree(parse_edge_list("")), InputError);
  CHECK(validate_tree(parse_edge_list("0 1\n")).n() == 2);
}

TEST_CASE("edge partition and deep edges on a path") {
  Tree p6 = make_path(6);
  auto [theta, theta_bar] = edge_partition(p6.graph());
  CHECK(theta == EdgeList{{1, 2}, {2, 3}, {3, 4}});
  CHECK(theta_bar == EdgeList{{0, 1}, {4, 5}});
  auto [border, deep] = border_and_deep(p6.graph());
  CHECK(border == std::vector<VertexId>{1, 4});
  CHECK(deep == EdgeList{{2, 3}});
}

TEST_CASE("edge partition and border set agree with their definitions") {
  for (uint64_t s = 0; s < 200; ++s) {
    Tree t = random_tree(3 + static_cast<int>(s % 20), s);
    const Graph& g = t.graph();
    auto [theta, theta_bar] = edge_partition(g);
    CHECK(theta.size() + theta_bar.size() == g.edges().size());
    for (auto e : theta_bar) CHECK((g.deg(e.a) == 1 || g.deg(e.b) == 1));
    for (auto e : theta) CHECK((g.deg(e.a) > 1 && g.deg(e.b) > 1));
    std::set<VertexId> on_theta, on_bar;
    for (auto e : theta) on_theta.insert({e.a, e.b});
    for (auto e : theta_bar) on_bar.insert({e.a, e.b});
    auto [border, deep] = border_and_deep(g);
    std::set<VertexId> bset(border.begin(), border.end());
    for (int v = 0; v < g.n(); ++v) CHECK(bset.count(v) == (on_theta.count(v) && on_bar.count(v)));
    EdgeList want;
    for (auto e : theta)
      if (!bset.count(e.a) && !bset.count(e.b)) want.push_back(e);
    CHECK(deep == want);
  }
}

TEST_CASE("split sides share exactly the split edge") {
  for (uint64_t s = 0; s < 100; ++s) {
    Tree t = random_tree(2 + static_cast<int>(s % 30), s);
    for (auto e : t.edges()) {
      auto sp = split_at_edge(t, e);
      CHECK(sp.side1.n() + sp.side2.n() == t.n() + 2);
      CHECK(sp.side1.m() + sp.side2.m() == t.m() + 1);
      CHECK(std::find(sp.map1.begin(), sp.map1.end(), e.a) != sp.map1.end());
      auto s1 = side_vertices(t.graph(), e.b, e.a);
      CHECK(s1 == sp.map1);
    }
  }
  CHECK_THROWS_AS(split_at_edge(make_path(4), Edge(0, 2)), InputError);
}

TEST_CASE("peel levels partition the vertex set") {
  for (uint64_t s = 0; s < 100; ++s) {
    Tree t = random_tree(1 + static_cast<int>(s % 40), s);
    auto pl = peel_levels(t.graph());
    std::vector<int> seen(t.n(), 0);
    for (size_t k = 0; k < pl.levels.size(); ++k)
      for (int v : pl.levels[k]) {
        ++seen[v];
        CHECK(pl.k[v] == static_cast<int>(k));
      }
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("distances, leaves, components") {
  Tree t = tree_of("0 1\n1 2\n2 3\n1 4\n");
  CHECK(distance(t.graph(), 0, 3) == 3);
  CHECK(distance(t.graph(), 4, 4) == 0);
  CHECK(leaves(t.graph()) == std::vector<VertexId>{0, 3, 4});
  Graph forest = induced(t.graph(), {0, 1, 2, 3, 4}, {Edge(1, 2)});
  auto comps = components(forest);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<VertexId>{0, 1, 4});
  CHECK(comps[1] == std::vector<VertexId>{2, 3});
}
