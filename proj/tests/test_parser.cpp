#include "doctest.h"

#include <string>

#include "bei/error.hpp"
#include "bei/parser.hpp"

using namespace bei;

namespace {

bool parse_fails_with(const std::string& text, const std::string& needle) {
  try {
    parse_expr(text);
  } catch (const BeiError& e) {
    if (e.kind() != ErrorKind::ParseError) return false;
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

} // namespace

TEST_CASE("atoms parse") {
  ExprPtr k = parse_expr("K(3)");
  REQUIRE(k);
  CHECK(k->op == ExprOp::Clique);
  CHECK(k->param == 3);

  ExprPtr p = parse_expr("path(5)");
  CHECK(p->op == ExprOp::Path);
  CHECK(p->param == 5);

  ExprPtr f = parse_expr("Fp(2)");
  CHECK(f->op == ExprOp::Fp);
  CHECK(f->param == 2);

  ExprPtr fan = parse_expr("fan(3; W=[[1],[2]]; a=[[2],[3]])");
  REQUIRE(fan->op == ExprOp::Fan);
  CHECK(fan->fan.n == 3);
  REQUIRE(fan->fan.k() == 2);
  CHECK(fan->fan.partition[0] == std::vector<int>{1});
  CHECK(fan->fan.branch_sizes[1] == std::vector<int>{3});
  CHECK(fan->fan.marks.empty());

  ExprPtr bare = parse_expr("fan(4)");
  CHECK(bare->fan.n == 4);
  CHECK(bare->fan.k() == 0);
}

TEST_CASE("explicit marks and operand marks") {
  ExprPtr fan = parse_expr("fan(3; W=[[1]]; a=[[2]]; marks=[4])");
  CHECK(fan->fan.marks == std::vector<int>{4});

  ExprPtr s = parse_expr("star(path(4) @ 4, path(3) @ 1)");
  REQUIRE(s->op == ExprOp::Star);
  REQUIRE(s->left_mark.has_value());
  CHECK(*s->left_mark == 4);
  REQUIRE(s->right_mark.has_value());
  CHECK(*s->right_mark == 1);
  CHECK(s->left->op == ExprOp::Path);

  ExprPtr c = parse_expr("circ(Fp(3), Fp(2))");
  CHECK(c->op == ExprOp::Circ);
  CHECK_FALSE(c->left_mark.has_value());
}

TEST_CASE("whitespace is free") {
  ExprPtr a = parse_expr("  circ( Fp(3) ,Fp(2) )  ");
  CHECK(emit_expr(a) == "circ(Fp(3), Fp(2))");
  ExprPtr b = parse_expr("fan( 3 ;W = [ [1], [2] ] ; a=[[2],[2]] )");
  CHECK(emit_expr(b) == "fan(3; W=[[1],[2]]; a=[[2],[2]])");
}

TEST_CASE("parse errors carry positions") {
  CHECK(parse_fails_with("K(", "line 1 col"));
  CHECK(parse_fails_with("K(3) trailing", "line 1 col"));
  CHECK(parse_fails_with("fan(3; W=[[1]])", "together"));
  CHECK(parse_fails_with("fan(3; q=[[1]])", "line 1 col"));
  CHECK(parse_fails_with("fan(3; W=[[1]]; W=[[2]]; a=[[2]])", "duplicate"));
  CHECK(parse_fails_with("blob(3)", "line 1 col"));
  CHECK(parse_fails_with("", "line 1 col"));
  CHECK(parse_fails_with("path(12345678)", "line 1 col"));
  CHECK(parse_fails_with("circ(Fp(2) @ 1)", "line 1 col"));
}

TEST_CASE("emission is canonical and stable") {
  std::vector<std::string> inputs = {
      "fan(3; W=[[1],[2]]; a=[[2],[3]])",
      "circ(star(Fp(2), Fp(2)), Fp(2))",
      "star(fan(3; W=[[1,2]]; a=[[2,3]]), path(3))",
      "star(path(4)@4, path(3)@1)",
      "K(2)",
  };
  for (const std::string& text : inputs) {
    ExprPtr e = parse_expr(text);
    std::string once = emit_expr(e);
    CHECK(once == text);
    CHECK(emit_expr(parse_expr(once)) == once);
  }
}

TEST_CASE("round trips preserve the realized graph") {
  std::vector<std::string> inputs = {
      "circ(fan(4; W=[[1],[2]]; a=[[2],[2]]), fan(3; W=[[1]]; a=[[2]]))",
      "star(Fp(3), path(4))",
      "circ(circ(Fp(2), Fp(3)), Fp(2))",
  };
  for (const std::string& text : inputs) {
    ExprPtr e = parse_expr(text);
    ExprPtr back = parse_expr(emit_expr(e));
    Realization r1 = realize(e);
    Realization r2 = realize(back);
    CHECK(r1.graph.vertices() == r2.graph.vertices());
    CHECK(r1.graph.edges() == r2.graph.edges());
    CHECK(r1.marks == r2.marks);
  }
}
