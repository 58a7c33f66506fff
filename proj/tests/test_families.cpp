#include "doctest.h"

#include <algorithm>

#include "bei/error.hpp"
#include "bei/families.hpp"

using namespace bei;

namespace {

FanSpec make_fan(int n, std::vector<std::vector<int>> w, std::vector<std::vector<int>> a) {
  FanSpec s;
  s.n = n;
  s.partition = std::move(w);
  s.branch_sizes = std::move(a);
  return s;
}

int leaf_count(const Graph& g) { return static_cast<int>(leaves(g).size()); }

} // namespace

TEST_CASE("fan spec accounting") {
  FanSpec s = make_fan(3, {{1, 2}}, {{2, 3}});
  s.validate();
  CHECK(s.k() == 1);
  CHECK(s.branch_length(0) == 2);
  CHECK(s.a(0, 0) == 2);
  CHECK(s.h(0, 0) == 1);
  CHECK(s.h(0, 1) == 1);
  CHECK(s.total_base_marked() == 2);
  CHECK(s.total_vertices() == 5);
  CHECK(s.pure());
  CHECK(s.delta() == 0);
  CHECK(s.clique_count() == 3);
  CHECK(s.max_clique_size() == 3);
  CHECK(s.branch_leaf(0) == 4);
  CHECK(s.designated_marks() == std::vector<int>{4});
  CHECK(s.branch_of_leaf_mark(4) == 0);
  CHECK_FALSE(s.branch_of_leaf_mark(5).has_value());
}

TEST_CASE("impure fan spec") {
  FanSpec s = make_fan(4, {{1}}, {{3}});
  s.validate();
  CHECK(s.total_vertices() == 6);
  CHECK_FALSE(s.pure());
  CHECK(s.delta() == 1);
  CHECK(s.max_clique_size() == 4);
  CHECK_FALSE(s.branch_leaf(0).has_value()); // first clique is a triangle
  CHECK(s.designated_marks().empty());
}

TEST_CASE("fan spec validation") {
  CHECK_THROWS_AS(make_fan(0, {}, {}).validate(), BeiError);
  CHECK_THROWS_AS(make_fan(2, {{1}}, {}).validate(), BeiError);           // shape mismatch
  CHECK_THROWS_AS(make_fan(2, {{3}}, {{2}}).validate(), BeiError);        // base out of range
  CHECK_THROWS_AS(make_fan(2, {{1}, {1}}, {{2}, {2}}).validate(), BeiError); // reused base
  CHECK_THROWS_AS(make_fan(3, {{1}}, {{1}}).validate(), BeiError);        // no fresh vertex
}

TEST_CASE("atom realizations") {
  MarkedGraph k3 = realize_complete(3);
  CHECK(k3.graph.num_vertices() == 3);
  CHECK(k3.graph.num_edges() == 3);
  CHECK(k3.marks.empty());

  MarkedGraph k2 = realize_complete(2);
  CHECK(k2.marks == std::vector<int>{1, 2});

  MarkedGraph p4 = realize_path(4);
  CHECK(p4.graph.num_edges() == 3);
  CHECK(p4.marks == std::vector<int>{1, 4});

  MarkedGraph f1 = realize_fp(1);
  CHECK(f1.graph.num_vertices() == 2);
  CHECK(f1.graph.num_edges() == 1);
  CHECK(f1.marks == std::vector<int>{1, 2});

  MarkedGraph f2 = realize_fp(2);
  CHECK(f2.graph.num_edges() == 3); // a four-vertex path 1-2-3-4
  CHECK(f2.graph.has_edge(1, 2));
  CHECK(f2.graph.has_edge(2, 3));
  CHECK(f2.graph.has_edge(3, 4));

  MarkedGraph f3 = realize_fp(3);
  CHECK(f3.graph.num_vertices() == 6);
  CHECK(f3.graph.num_edges() == 6);
  CHECK(f3.marks == std::vector<int>{1, 6});
  CHECK(leaves(f3.graph) == VertexSet{1, 6});
  CHECK(is_bipartite(f3.graph).has_value());

  MarkedGraph fan = realize_fan(make_fan(3, {{1, 2}}, {{2, 3}}));
  CHECK(fan.graph.num_vertices() == 5);
  CHECK(fan.graph.num_edges() == 6);
  CHECK(fan.graph.has_edge(1, 4));
  CHECK(fan.graph.has_edge(1, 5));
  CHECK(fan.graph.has_edge(2, 5));
  CHECK(fan.marks == std::vector<int>{4});
}

TEST_CASE("gluing both ways") {
  MarkedGraph a = realize_path(3);
  MarkedGraph b{Graph({11, 12, 13}, {{11, 12}, {12, 13}}), {11, 13}};

  MarkedGraph st = compose_star(a, 3, b, 11);
  CHECK(st.graph.num_vertices() == 5);
  CHECK(st.graph.num_edges() == 4);
  CHECK(leaf_count(st.graph) == 2);
  CHECK(st.marks == std::vector<int>{1, 13});

  MarkedGraph ci = compose_circ(a, 3, b, 11);
  CHECK(ci.graph.num_vertices() == 3);
  CHECK(ci.graph.num_edges() == 2);
  CHECK(ci.marks == std::vector<int>{1, 13});

  CHECK_THROWS_AS(compose_circ(realize_path(2), 2, b, 11), BeiError);
  CHECK_THROWS_AS(compose_star(a, 2, b, 11), BeiError);  // 2 is not a designated leaf
  CHECK_THROWS_AS(compose_star(a, 3, a, 1), BeiError);   // overlapping labels
}

TEST_CASE("expression realization with traces") {
  ExprPtr e = expr_circ(expr_fp(3), expr_fp(2));
  Realization r = realize(e);
  CHECK(r.graph.num_vertices() == 7);
  CHECK(is_connected(r.graph));
  CHECK(expr_vertex_count(*e) == 7);
  REQUIRE(r.atoms.size() == 2);
  CHECK(r.atoms[0].first_label == 1);
  CHECK(r.atoms[0].last_label == 6);
  CHECK(r.atoms[1].first_label == 7);
  CHECK(r.atoms[1].last_label == 10);
  REQUIRE(r.uses.size() == 1);
  CHECK(r.uses[0].left_mark == 6);   // default: last survivor of the left operand
  CHECK(r.uses[0].right_mark == 7);  // default: first survivor of the right operand
  CHECK(r.marks == std::vector<int>{1, 10});
}

TEST_CASE("explicit operand marks") {
  ExprPtr e = expr_star(expr_path(3), expr_path(3), 1, 3);
  Realization r = realize(e);
  REQUIRE(r.uses.size() == 1);
  CHECK(r.uses[0].left_mark == 1);
  CHECK(r.uses[0].right_mark == 6); // operand-local 3 shifted past the left atom
  CHECK(r.marks == std::vector<int>{3, 4});

  ExprPtr bad = expr_star(expr_path(3), expr_path(3), 2, 3);
  CHECK_THROWS_AS(realize(bad), BeiError);
}

TEST_CASE("nested composites keep counts consistent") {
  ExprPtr inner = expr_star(expr_fp(2), expr_path(3));
  ExprPtr e = expr_circ(inner, expr_fp(3));
  Realization r = realize(e);
  CHECK(expr_vertex_count(*e) == r.graph.num_vertices());
  CHECK(r.graph.num_vertices() == 4 + 3 - 1 + 6 - 3);
  REQUIRE(r.atoms.size() == 3);
  REQUIRE(r.uses.size() == 2);
  CHECK(r.uses[0].node == inner.get());
  CHECK(r.uses[1].node == e.get());
  // post-order trace: labels always sit inside their atom's declared range
  for (const NodeUse& u : r.uses) {
    bool l_ok = false, r_ok = false;
    for (const AtomRange& a : r.atoms) {
      if (u.left_mark >= a.first_label && u.left_mark <= a.last_label) l_ok = true;
      if (u.right_mark >= a.first_label && u.right_mark <= a.last_label) r_ok = true;
    }
    CHECK(l_ok);
    CHECK(r_ok);
  }
}

TEST_CASE("marks exhaust") {
  // both whisker leaves get consumed by the inner gluing, so the outer one
  // has nothing left to pick up on its left side
  ExprPtr none_left = expr_star(expr_fan(make_fan(3, {{1}}, {{2}})),
                                expr_fan(make_fan(3, {{1}}, {{2}})));
  CHECK(realize(none_left).marks.empty());
  CHECK_THROWS_AS(realize(expr_circ(none_left, expr_fp(2))), BeiError);
}
