#include "bei/parser.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

#include "bei/error.hpp"

namespace bei {

namespace {

enum class Tok { Ident, Int, LParen, RParen, LBrack, RBrack, Comma, Semi, At, Eq, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long value = 0;
  int line = 1, col = 1;
};

[[noreturn]] void parse_err(int line, int col, const std::string& msg) {
  fail(ErrorKind::ParseError,
       "line " + std::to_string(line) + " col " + std::to_string(col) + ": " + msg);
}

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) return t;
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        t.text += src[pos];
        advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        t.text += src[pos];
        advance();
      }
      if (t.text.size() > 7) parse_err(t.line, t.col, "number too large");
      t.value = std::stol(t.text);
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '[': t.kind = Tok::LBrack; return t;
      case ']': t.kind = Tok::RBrack; return t;
      case ',': t.kind = Tok::Comma; return t;
      case ';': t.kind = Tok::Semi; return t;
      case '@': t.kind = Tok::At; return t;
      case '=': t.kind = Tok::Eq; return t;
      default: parse_err(t.line, t.col, std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lex;
  Token cur;

  explicit Parser(const std::string& s) : lex{s} { cur = lex.next(); }

  [[noreturn]] void err(const std::string& msg) const { parse_err(cur.line, cur.col, msg); }
  void bump() { cur = lex.next(); }
  void expect(Tok k, const char* what) {
    if (cur.kind != k) err(std::string("expected ") + what);
    bump();
  }
  long expect_int(const char* what) {
    if (cur.kind != Tok::Int) err(std::string("expected ") + what);
    long v = cur.value;
    bump();
    return v;
  }

  std::vector<int> parse_list() {
    expect(Tok::LBrack, "'['");
    std::vector<int> out;
    if (cur.kind == Tok::RBrack) {
      bump();
      return out;
    }
    out.push_back(static_cast<int>(expect_int("integer")));
    while (cur.kind == Tok::Comma) {
      bump();
      out.push_back(static_cast<int>(expect_int("integer")));
    }
    expect(Tok::RBrack, "']'");
    return out;
  }

  std::vector<std::vector<int>> parse_lolist() {
    expect(Tok::LBrack, "'['");
    std::vector<std::vector<int>> out;
    if (cur.kind == Tok::RBrack) {
      bump();
      return out;
    }
    out.push_back(parse_list());
    while (cur.kind == Tok::Comma) {
      bump();
      out.push_back(parse_list());
    }
    expect(Tok::RBrack, "']'");
    return out;
  }

  ExprPtr parse_fan() {
    expect(Tok::LParen, "'('");
    FanSpec spec;
    spec.n = static_cast<int>(expect_int("base size"));
    bool have_w = false, have_a = false, have_marks = false;
    while (cur.kind == Tok::Semi) {
      bump();
      if (cur.kind != Tok::Ident) err("expected keyword W, a, or marks");
      std::string key = cur.text;
      bump();
      expect(Tok::Eq, "'='");
      if (key == "W") {
        if (have_w) err("duplicate keyword W");
        have_w = true;
        spec.partition = parse_lolist();
      } else if (key == "a") {
        if (have_a) err("duplicate keyword a");
        have_a = true;
        spec.branch_sizes = parse_lolist();
      } else if (key == "marks") {
        if (have_marks) err("duplicate keyword marks");
        have_marks = true;
        spec.marks = parse_list();
      } else {
        err("unknown keyword '" + key + "'");
      }
    }
    expect(Tok::RParen, "')'");
    if (have_w != have_a) err("W= and a= must be given together");
    return expr_fan(std::move(spec));
  }

  std::pair<ExprPtr, std::optional<int>> parse_operand() { // NOLINT(misc-no-recursion)
    ExprPtr e = parse_node();
    std::optional<int> mark;
    if (cur.kind == Tok::At) {
      bump();
      mark = static_cast<int>(expect_int("mark label"));
    }
    return {std::move(e), mark};
  }

  ExprPtr parse_node() { // NOLINT(misc-no-recursion)
    if (cur.kind != Tok::Ident) err("expected expression");
    std::string name = cur.text;
    bump();
    if (name == "K" || name == "path" || name == "Fp") {
      expect(Tok::LParen, "'('");
      long v = expect_int("size");
      expect(Tok::RParen, "')'");
      if (name == "K") return expr_clique(static_cast<int>(v));
      if (name == "path") return expr_path(static_cast<int>(v));
      return expr_fp(static_cast<int>(v));
    }
    if (name == "fan") return parse_fan();
    if (name == "circ" || name == "star") {
      expect(Tok::LParen, "'('");
      auto [l, lm] = parse_operand();
      expect(Tok::Comma, "','");
      auto [r, rm] = parse_operand();
      expect(Tok::RParen, "')'");
      return name == "circ" ? expr_circ(std::move(l), std::move(r), lm, rm)
                            : expr_star(std::move(l), std::move(r), lm, rm);
    }
    err("unknown constructor '" + name + "'");
  }
};

void emit_list(std::ostringstream& os, const std::vector<int>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ']';
}

void emit_lolist(std::ostringstream& os, const std::vector<std::vector<int>>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    emit_list(os, v[i]);
  }
  os << ']';
}

void emit_rec(std::ostringstream& os, const GraphExpr& e) { // NOLINT(misc-no-recursion)
  switch (e.op) {
    case ExprOp::Clique: os << "K(" << e.param << ")"; return;
    case ExprOp::Path: os << "path(" << e.param << ")"; return;
    case ExprOp::Fp: os << "Fp(" << e.param << ")"; return;
    case ExprOp::Fan:
      os << "fan(" << e.fan.n;
      if (!e.fan.partition.empty()) {
        os << "; W=";
        emit_lolist(os, e.fan.partition);
        os << "; a=";
        emit_lolist(os, e.fan.branch_sizes);
      }
      if (!e.fan.marks.empty()) {
        os << "; marks=";
        emit_list(os, e.fan.marks);
      }
      os << ")";
      return;
    case ExprOp::Circ:
    case ExprOp::Star:
      os << (e.op == ExprOp::Circ ? "circ(" : "star(");
      emit_rec(os, *e.left);
      if (e.left_mark) os << "@" << *e.left_mark;
      os << ", ";
      emit_rec(os, *e.right);
      if (e.right_mark) os << "@" << *e.right_mark;
      os << ")";
      return;
  }
  fail(ErrorKind::Internal, "unhandled expression node");
}

} // namespace

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  ExprPtr e = p.parse_node();
  if (p.cur.kind != Tok::End) p.err("unexpected trailing input");
  return e;
}

std::string emit_expr(const ExprPtr& expr) {
  if (!expr) fail(ErrorKind::InvalidInput, "empty expression");
  std::ostringstream os;
  emit_rec(os, *expr);
  return os.str();
}

} // namespace bei
