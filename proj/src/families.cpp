#include "bei/families.hpp"

#include <algorithm>
#include <sstream>

#include "bei/error.hpp"

namespace bei {

void FanSpec::validate() const {
  if (n < 2) fail(ErrorKind::InvalidInput, "fan base clique needs n >= 2");
  if (branch_sizes.size() != partition.size())
    fail(ErrorKind::InvalidInput, "invalid-partition: need one size list per branch");
  std::vector<int> seen;
  for (int i = 0; i < k(); ++i) {
    const auto& part = partition[i];
    if (part.empty())
      fail(ErrorKind::InvalidInput, "invalid-partition: empty branch " + std::to_string(i + 1));
    if (static_cast<int>(branch_sizes[i].size()) != branch_length(i))
      fail(ErrorKind::InvalidInput, "invalid-partition: branch " + std::to_string(i + 1) +
                                        " needs " + std::to_string(branch_length(i)) +
                                        " clique sizes");
    for (int w : part) {
      if (w < 1 || w > n)
        fail(ErrorKind::InvalidInput,
             "invalid-partition: label " + std::to_string(w) + " outside base clique");
      seen.push_back(w);
    }
    for (int j = 0; j < branch_length(i); ++j)
      if (a(i, j) <= j + 1)
        fail(ErrorKind::InvalidInput,
             "branch-size-violation: clique " + std::to_string(j + 1) + " of branch " +
                 std::to_string(i + 1) + " needs more than " + std::to_string(j + 1) +
                 " vertices");
  }
  if (sorted_unique(seen).size() != seen.size())
    fail(ErrorKind::InvalidInput, "invalid-partition: branches must be disjoint");
  if (static_cast<int>(marks.size()) > 2)
    fail(ErrorKind::InvalidInput, "at most two marks allowed");
}

int FanSpec::total_base_marked() const {
  int w = 0;
  for (const auto& part : partition) w += static_cast<int>(part.size());
  return w;
}

int FanSpec::total_vertices() const {
  int v = n;
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < branch_length(i); ++j) v += h(i, j);
  return v;
}

bool FanSpec::pure() const {
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < branch_length(i); ++j)
      if (h(i, j) >= 2) return false;
  return true;
}

int FanSpec::delta() const {
  int d = 0;
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < branch_length(i); ++j)
      if (h(i, j) >= 2) ++d;
  return d;
}

int FanSpec::clique_count() const {
  int w = total_base_marked();
  if (k() == 1 && w == n) return w; // base clique absorbed by the last branch clique
  return w + 1;
}

int FanSpec::max_clique_size() const {
  int c = n;
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < branch_length(i); ++j) c = std::max(c, a(i, j));
  return c;
}

namespace {

// Fresh labels for branch clique (i, j), assigned after the base clique in
// (i, j) order.
int fresh_label_start(const FanSpec& s, int i, int j) {
  int next = s.n + 1;
  for (int bi = 0; bi < s.k(); ++bi)
    for (int bj = 0; bj < s.branch_length(bi); ++bj) {
      if (bi == i && bj == j) return next;
      next += s.h(bi, bj);
    }
  return next;
}

} // namespace

std::optional<int> FanSpec::branch_leaf(int i) const {
  if (i < 0 || i >= k()) return std::nullopt;
  if (a(i, 0) != 2) return std::nullopt;
  return fresh_label_start(*this, i, 0);
}

std::vector<int> FanSpec::designated_marks() const {
  if (!marks.empty()) return marks;
  std::vector<int> out;
  if (k() >= 1) {
    if (auto f = branch_leaf(0)) out.push_back(*f);
    if (k() >= 2) {
      if (auto f = branch_leaf(k() - 1)) out.push_back(*f);
    }
  }
  return out;
}

std::optional<int> FanSpec::branch_of_leaf_mark(int mark) const {
  for (int i = 0; i < k(); ++i)
    if (branch_leaf(i) == std::optional<int>(mark)) return i;
  return std::nullopt;
}

void MarkedGraph::validate() const {
  if (marks.size() > 2) fail(ErrorKind::InvalidInput, "at most two marks allowed");
  for (int f : marks) {
    if (!graph.has_vertex(f))
      fail(ErrorKind::UnknownVertex, "mark " + std::to_string(f) + " is not a vertex");
    if (graph.degree(f) != 1)
      fail(ErrorKind::MarkError, "mark " + std::to_string(f) + " is not a leaf");
  }
}

ExprPtr expr_clique(int n) {
  auto e = std::make_shared<GraphExpr>();
  e->op = ExprOp::Clique;
  e->param = n;
  return e;
}

ExprPtr expr_path(int t) {
  auto e = std::make_shared<GraphExpr>();
  e->op = ExprOp::Path;
  e->param = t;
  return e;
}

ExprPtr expr_fp(int p) {
  auto e = std::make_shared<GraphExpr>();
  e->op = ExprOp::Fp;
  e->param = p;
  return e;
}

ExprPtr expr_fan(FanSpec spec) {
  auto e = std::make_shared<GraphExpr>();
  e->op = ExprOp::Fan;
  e->fan = std::move(spec);
  return e;
}

static ExprPtr make_node(ExprOp op, ExprPtr l, ExprPtr r, std::optional<int> lm,
                         std::optional<int> rm) {
  auto e = std::make_shared<GraphExpr>();
  e->op = op;
  e->left = std::move(l);
  e->right = std::move(r);
  e->left_mark = lm;
  e->right_mark = rm;
  return e;
}

ExprPtr expr_circ(ExprPtr l, ExprPtr r, std::optional<int> lm, std::optional<int> rm) {
  return make_node(ExprOp::Circ, std::move(l), std::move(r), lm, rm);
}

ExprPtr expr_star(ExprPtr l, ExprPtr r, std::optional<int> lm, std::optional<int> rm) {
  return make_node(ExprOp::Star, std::move(l), std::move(r), lm, rm);
}

MarkedGraph realize_complete(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "complete graph needs n >= 1");
  VertexSet verts;
  for (int v = 1; v <= n; ++v) verts.push_back(v);
  MarkedGraph mg{complete_graph_on(verts), {}};
  if (n == 2) mg.marks = {1, 2}; // a two-clique is an edge; both ends are leaves
  return mg;
}

MarkedGraph realize_path(int t) {
  if (t < 1) fail(ErrorKind::InvalidInput, "path needs t >= 1");
  VertexSet verts;
  std::vector<Edge> edges;
  for (int v = 1; v <= t; ++v) verts.push_back(v);
  for (int v = 1; v < t; ++v) edges.push_back({v, v + 1});
  MarkedGraph mg{Graph(verts, edges), {}};
  if (t >= 2) mg.marks = {1, t};
  return mg;
}

MarkedGraph realize_fp(int p) {
  if (p < 1) fail(ErrorKind::InvalidInput, "bipartite block needs p >= 1");
  VertexSet verts;
  std::vector<Edge> edges;
  for (int v = 1; v <= 2 * p; ++v) verts.push_back(v);
  for (int i = 1; i <= p; ++i)
    for (int j = i; j <= p; ++j) edges.push_back({2 * i, 2 * j - 1});
  MarkedGraph mg{Graph(verts, edges), {1, 2 * p}};
  if (p == 1) mg.marks = {1, 2};
  return mg;
}

MarkedGraph realize_fan(const FanSpec& spec) {
  spec.validate();
  VertexSet verts;
  for (int v = 1; v <= spec.total_vertices(); ++v) verts.push_back(v);
  std::vector<Edge> edges;
  for (int u = 1; u <= spec.n; ++u)
    for (int w = u + 1; w <= spec.n; ++w) edges.push_back({u, w});
  for (int i = 0; i < spec.k(); ++i)
    for (int j = 0; j < spec.branch_length(i); ++j) {
      VertexSet clique(spec.partition[i].begin(), spec.partition[i].begin() + j + 1);
      int start = fresh_label_start(spec, i, j);
      for (int v = 0; v < spec.h(i, j); ++v) clique.push_back(start + v);
      clique = sorted_unique(std::move(clique));
      for (size_t u = 0; u < clique.size(); ++u)
        for (size_t w = u + 1; w < clique.size(); ++w)
          edges.push_back({clique[u], clique[w]});
    }
  MarkedGraph mg{Graph(verts, edges), spec.designated_marks()};
  mg.validate(); // rejects marks that are not leaves
  return mg;
}

namespace {

Graph relabel_vertex(const Graph& g, int from, int to) {
  VertexSet verts;
  for (int v : g.vertices()) verts.push_back(v == from ? to : v);
  std::vector<Edge> edges;
  for (auto e : g.edges()) {
    if (e.first == from) e.first = to;
    if (e.second == from) e.second = to;
    edges.push_back(e);
  }
  return Graph(sorted_unique(std::move(verts)), std::move(edges));
}

void check_mark_usable(const MarkedGraph& g, int mark) {
  if (!g.graph.has_vertex(mark))
    fail(ErrorKind::UnknownVertex, "mark " + std::to_string(mark) + " is not a vertex");
  if (g.graph.degree(mark) != 1)
    fail(ErrorKind::MarkError, "mark " + std::to_string(mark) + " is not a leaf");
  if (std::find(g.marks.begin(), g.marks.end(), mark) == g.marks.end())
    fail(ErrorKind::MarkError,
         "mark " + std::to_string(mark) + " is not available (consumed or never designated)");
}

std::vector<int> surviving_marks(const MarkedGraph& a, int mark_a, const MarkedGraph& b,
                                 int mark_b) {
  std::vector<int> out;
  for (int f : a.marks)
    if (f != mark_a) out.push_back(f);
  for (int f : b.marks)
    if (f != mark_b) out.push_back(f);
  return out;
}

bool is_single_edge(const Graph& g) {
  return g.num_vertices() == 2 && g.num_edges() == 1;
}

} // namespace

MarkedGraph compose_circ(const MarkedGraph& a, int mark_a, const MarkedGraph& b,
                         int mark_b) {
  check_mark_usable(a, mark_a);
  check_mark_usable(b, mark_b);
  if (is_single_edge(a.graph) || is_single_edge(b.graph))
    fail(ErrorKind::MarkError, "neither operand of circ may be a single edge");
  if (!set_intersection(a.graph.vertices(), b.graph.vertices()).empty())
    fail(ErrorKind::InvalidInput, "operands must use disjoint labels");
  int va = a.graph.adjacent(mark_a)[0];
  int vb = b.graph.adjacent(mark_b)[0];
  Graph left = delete_vertices(a.graph, {mark_a});
  Graph right = relabel_vertex(delete_vertices(b.graph, {mark_b}), vb, va);
  VertexSet verts = set_union(left.vertices(), set_difference(right.vertices(), {va}));
  std::vector<Edge> edges = left.edges();
  edges.insert(edges.end(), right.edges().begin(), right.edges().end());
  MarkedGraph out{Graph(verts, edges), surviving_marks(a, mark_a, b, mark_b)};
  out.validate();
  return out;
}

MarkedGraph compose_star(const MarkedGraph& a, int mark_a, const MarkedGraph& b,
                         int mark_b) {
  check_mark_usable(a, mark_a);
  check_mark_usable(b, mark_b);
  if (!set_intersection(a.graph.vertices(), b.graph.vertices()).empty())
    fail(ErrorKind::InvalidInput, "operands must use disjoint labels");
  Graph right = relabel_vertex(b.graph, mark_b, mark_a);
  VertexSet verts = set_union(a.graph.vertices(), right.vertices());
  std::vector<Edge> edges = a.graph.edges();
  edges.insert(edges.end(), right.edges().begin(), right.edges().end());
  MarkedGraph out{Graph(verts, edges), surviving_marks(a, mark_a, b, mark_b)};
  out.validate();
  return out;
}

namespace {

struct LocalRealization {
  MarkedGraph mg;
  std::vector<AtomRange> atoms;
  std::vector<NodeUse> uses;
};

std::string fan_kind_text(const FanSpec& s) {
  std::ostringstream os;
  os << "fan(" << s.n << ";W=[";
  for (int i = 0; i < s.k(); ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < s.branch_length(i); ++j) {
      if (j) os << ',';
      os << s.partition[i][j];
    }
    os << ']';
  }
  os << "];a=[";
  for (int i = 0; i < s.k(); ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < s.branch_length(i); ++j) {
      if (j) os << ',';
      os << s.branch_sizes[i][j];
    }
    os << ']';
  }
  os << "])";
  return os.str();
}

LocalRealization shift_labels(LocalRealization r, int offset) {
  if (offset == 0) return r;
  VertexSet verts;
  for (int v : r.mg.graph.vertices()) verts.push_back(v + offset);
  std::vector<Edge> edges;
  for (auto e : r.mg.graph.edges()) edges.push_back({e.first + offset, e.second + offset});
  r.mg.graph = Graph(verts, edges);
  for (int& f : r.mg.marks) f += offset;
  for (auto& a : r.atoms) {
    a.first_label += offset;
    a.last_label += offset;
  }
  for (auto& u : r.uses) {
    u.left_mark += offset;
    u.right_mark += offset;
  }
  return r;
}

int resolve_mark(const LocalRealization& r, std::optional<int> requested, bool take_last,
                 int offset) {
  if (requested) {
    int mark = *requested + offset;
    check_mark_usable(r.mg, mark);
    return mark;
  }
  if (r.mg.marks.empty())
    fail(ErrorKind::MarkError, "operand has no available mark");
  return take_last ? r.mg.marks.back() : r.mg.marks.front();
}

LocalRealization realize_rec(const GraphExpr& e, int offset) {
  switch (e.op) {
    case ExprOp::Clique: {
      auto mg = realize_complete(e.param);
      LocalRealization r{mg, {{"K(" + std::to_string(e.param) + ")", 1, e.param}}};
      return shift_labels(std::move(r), offset);
    }
    case ExprOp::Path: {
      auto mg = realize_path(e.param);
      LocalRealization r{mg, {{"path(" + std::to_string(e.param) + ")", 1, e.param}}};
      return shift_labels(std::move(r), offset);
    }
    case ExprOp::Fp: {
      auto mg = realize_fp(e.param);
      LocalRealization r{mg, {{"Fp(" + std::to_string(e.param) + ")", 1, 2 * e.param}}};
      return shift_labels(std::move(r), offset);
    }
    case ExprOp::Fan: {
      auto mg = realize_fan(e.fan);
      LocalRealization r{mg, {{fan_kind_text(e.fan), 1, e.fan.total_vertices()}}};
      return shift_labels(std::move(r), offset);
    }
    case ExprOp::Circ:
    case ExprOp::Star: {
      LocalRealization left = realize_rec(*e.left, offset);
      int left_max = left.mg.graph.vertices().empty() ? offset : left.mg.graph.vertices().back();
      // Deleted labels of nested compositions stay reserved; fresh labels for
      // the right operand start after every label the left subtree ever used.
      for (const auto& a : left.atoms) left_max = std::max(left_max, a.last_label);
      LocalRealization right = realize_rec(*e.right, left_max);
      int mark_l = resolve_mark(left, e.left_mark, true, offset);
      int mark_r = resolve_mark(right, e.right_mark, false, left_max);
      MarkedGraph glued = e.op == ExprOp::Circ
                              ? compose_circ(left.mg, mark_l, right.mg, mark_r)
                              : compose_star(left.mg, mark_l, right.mg, mark_r);
      LocalRealization out{std::move(glued), std::move(left.atoms), std::move(left.uses)};
      out.atoms.insert(out.atoms.end(), right.atoms.begin(), right.atoms.end());
      out.uses.insert(out.uses.end(), right.uses.begin(), right.uses.end());
      out.uses.push_back({&e, mark_l, mark_r});
      return out;
    }
  }
  fail(ErrorKind::Internal, "unhandled expression node");
}

} // namespace

Realization realize(const GraphExpr& expr) {
  LocalRealization r = realize_rec(expr, 0);
  return Realization{std::move(r.mg.graph), std::move(r.mg.marks), std::move(r.atoms),
                     std::move(r.uses)};
}

Realization realize(const ExprPtr& expr) {
  if (!expr) fail(ErrorKind::InvalidInput, "empty expression");
  return realize(*expr);
}

int expr_vertex_count(const GraphExpr& expr) {
  switch (expr.op) {
    case ExprOp::Clique: return expr.param;
    case ExprOp::Path: return expr.param;
    case ExprOp::Fp: return 2 * expr.param;
    case ExprOp::Fan: return expr.fan.total_vertices();
    case ExprOp::Circ:
      return expr_vertex_count(*expr.left) + expr_vertex_count(*expr.right) - 3;
    case ExprOp::Star:
      return expr_vertex_count(*expr.left) + expr_vertex_count(*expr.right) - 1;
  }
  fail(ErrorKind::Internal, "unhandled expression node");
}

} // namespace bei
