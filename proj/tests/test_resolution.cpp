#include "doctest.h"

#include "bei/error.hpp"
#include "bei/resolution.hpp"

using namespace bei;

namespace {

Graph path_graph(int t) {
  VertexSet v;
  std::vector<Edge> e;
  for (int i = 1; i <= t; ++i) v.push_back(i);
  for (int i = 1; i < t; ++i) e.push_back({i, i + 1});
  return Graph(v, e);
}

Poly var_poly(const RingContext& ctx, int idx) {
  return poly_from_terms(ctx, {{mono_var(idx), 1}});
}

} // namespace

TEST_CASE("koszul complex of two variables") {
  RingContext ctx = make_ring(1, 2, 32003, MonoOrder::DegRevLex);
  BettiTable t = minimal_graded_resolution(ctx, {var_poly(ctx, 0), var_poly(ctx, 1)});
  CHECK(t.rank(0, 0) == 1);
  CHECK(t.rank(1, 1) == 2);
  CHECK(t.rank(2, 2) == 1);
  CHECK(t.entries.size() == 3);
  CHECK(t.pd() == 2);
  CHECK(t.depth() == 0);
  CHECK(t.reg() == 0);
}

TEST_CASE("non-resolved quadratic pair has a linear syzygy") {
  RingContext ctx = make_ring(1, 2, 32003, MonoOrder::DegRevLex);
  Poly x2 = poly_from_terms(ctx, {{mono_var(0, 2), 1}});
  Poly xy = poly_from_terms(ctx, {{mono_mul(mono_var(0), mono_var(1)), 1}});
  BettiTable t = minimal_graded_resolution(ctx, {x2, xy});
  CHECK(t.rank(1, 2) == 2);
  CHECK(t.rank(2, 3) == 1);
  CHECK(t.pd() == 2);
  CHECK(t.reg() == 1);
  std::vector<long long> expect = {1, 0, -2, 1};
  CHECK(t.euler_numerator() == expect);
}

TEST_CASE("single minor resolves in one step") {
  Graph k2 = complete_graph_on({1, 2});
  GraphRing ring = make_graph_ring(k2, 2);
  BettiTable t = minimal_graded_resolution(ring.ctx, build_ideal_generators(ring, k2));
  CHECK(t.rank(1, 2) == 1);
  CHECK(t.pd() == 1);
  CHECK(t.depth() == 3);
  CHECK(t.reg() == 1);
  ResolutionInvariants inv = invariants_from_betti(t, 3);
  CHECK(inv.cm.has_value());
  CHECK(*inv.cm);
}

TEST_CASE("two-row path on three vertices") {
  Graph p3 = path_graph(3);
  GraphRing ring = make_graph_ring(p3, 2);
  BettiTable t = minimal_graded_resolution(ring.ctx, build_ideal_generators(ring, p3));
  CHECK(t.rank(1, 2) == 2);
  CHECK(t.rank(2, 4) == 1);
  CHECK(t.pd() == 2);
  CHECK(t.depth() == 4);
  CHECK(t.reg() == 2);
  ResolutionInvariants inv = invariants_from_betti(t, 4);
  REQUIRE(inv.cm.has_value());
  CHECK(*inv.cm);
}

TEST_CASE("two-row triangle is linearly resolved") {
  Graph k3 = complete_graph_on({1, 2, 3});
  GraphRing ring = make_graph_ring(k3, 2);
  BettiTable t = minimal_graded_resolution(ring.ctx, build_ideal_generators(ring, k3));
  CHECK(t.rank(1, 2) == 3);
  CHECK(t.rank(2, 3) == 2);
  CHECK(t.pd() == 2);
  CHECK(t.depth() == 4);
  CHECK(t.reg() == 1);
}

TEST_CASE("degree truncation does not change the answer") {
  Graph p4 = path_graph(4);
  GraphRing ring = make_graph_ring(p4, 2);
  std::vector<Poly> gens = build_ideal_generators(ring, p4);
  BettiTable plain = minimal_graded_resolution(ring.ctx, gens);
  ResOptions opts;
  opts.reg_bound = 3;
  BettiTable capped = minimal_graded_resolution(ring.ctx, gens, opts);
  CHECK(plain.reg() == 3);
  CHECK(plain.entries == capped.entries);
}

TEST_CASE("inputs must be homogeneous") {
  RingContext ctx = make_ring(1, 2, 32003, MonoOrder::DegRevLex);
  Poly bad = poly_from_terms(ctx, {{mono_var(0, 2), 1}, {mono_var(1), 1}});
  CHECK_THROWS_AS(minimal_graded_resolution(ctx, {bad}), BeiError);
}

TEST_CASE("zero ideal resolves to the ring itself") {
  RingContext ctx = make_ring(1, 3, 32003, MonoOrder::DegRevLex);
  BettiTable t = minimal_graded_resolution(ctx, {});
  CHECK(t.entries.size() == 1);
  CHECK(t.rank(0, 0) == 1);
  CHECK(t.pd() == 0);
  CHECK(t.depth() == 3);
  CHECK(t.reg() == 0);
}
