#include "doctest.h"

#include "bei/error.hpp"
#include "bei/graph.hpp"

using namespace bei;

TEST_CASE("set helpers") {
  CHECK(sorted_unique({3, 1, 2, 3}) == VertexSet{1, 2, 3});
  CHECK(set_union({1, 3}, {2, 3}) == VertexSet{1, 2, 3});
  CHECK(set_difference({1, 2, 3}, {2}) == VertexSet{1, 3});
  CHECK(set_intersection({1, 2, 3}, {2, 4}) == VertexSet{2});
  CHECK(contains({1, 4, 6}, 4));
  CHECK_FALSE(contains({1, 4, 6}, 5));
}

TEST_CASE("graph accessors") {
  Graph g({1, 2, 3, 4}, {{2, 1}, {2, 3}, {3, 4}, {1, 2}});
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 3); // duplicates and orientation collapse
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK(g.degree(2) == 2);
  CHECK(g.adjacent(2) == VertexSet{1, 3});
  CHECK(neighbors(g, 2, true) == VertexSet{1, 2, 3});
  CHECK(neighbors(g, 2, false) == VertexSet{1, 3});
  CHECK(leaves(g) == VertexSet{1, 4});
  CHECK(is_internal(g, 2));
  CHECK_FALSE(is_internal(g, 1));
}

TEST_CASE("graph input validation") {
  CHECK_THROWS_AS(Graph({1, 2}, {{1, 1}}), BeiError);
  CHECK_THROWS_AS(Graph({1, 2}, {{1, 3}}), BeiError);
}

TEST_CASE("string round trip") {
  Graph g({1, 2, 5}, {{1, 5}, {2, 5}});
  CHECK(graph_from_string(g.to_string()) == g);
  Graph lone({7}, {});
  CHECK(graph_from_string(lone.to_string()) == lone);
}

TEST_CASE("connectivity and cut vertices") {
  Graph p4({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(is_connected(p4));
  CHECK(is_cut_vertex(p4, 2));
  CHECK(is_cut_vertex(p4, 3));
  CHECK_FALSE(is_cut_vertex(p4, 1));
  Graph cut = delete_vertices(p4, {2});
  CHECK(cut.num_vertices() == 3);
  CHECK(num_components(cut) == 2);
  auto comps = connected_components(cut);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == VertexSet{1});
  CHECK(comps[1] == VertexSet{3, 4});
}

TEST_CASE("bipartition sides") {
  Graph p4({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
  auto bip = is_bipartite(p4);
  REQUIRE(bip.has_value());
  CHECK(bip->first == VertexSet{1, 3});
  CHECK(bip->second == VertexSet{2, 4});
  CHECK_FALSE(is_bipartite(complete_graph_on({1, 2, 3})).has_value());
}

TEST_CASE("saturation completes the closed neighborhood") {
  Graph p4({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
  Graph sat = saturate_neighborhood(p4, 2);
  CHECK(sat.has_edge(1, 3));
  CHECK(sat.num_edges() == 4);
  CHECK(sat.vertices() == p4.vertices());
}

TEST_CASE("building blocks") {
  Graph k = complete_graph_on({2, 4, 6});
  CHECK(k.num_edges() == 3);
  Graph u = disjoint_union(Graph({1}, {}), Graph({2, 3}, {{2, 3}}));
  CHECK(u.num_vertices() == 3);
  CHECK(u.num_edges() == 1);
  CHECK(num_components(u) == 2);
}
