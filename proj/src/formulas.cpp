#include "bei/formulas.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include "bei/error.hpp"

namespace bei {

namespace {

std::string set_text(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << '}';
  return os.str();
}

std::string num(long v) { return std::to_string(v); }

// ---------------------------------------------------------------------------
// Annotated expression skeleton. Atom metadata lives in a side table so tree
// rewrites can retarget leaves while mark references held by outer nodes stay
// resolvable through an alias map.

struct AtomNode {
  ExprOp op = ExprOp::Clique;
  int param = 0;
  FanSpec fan;
};

struct MarkRef {
  int atom = -1;
  int local = 0;
};

struct IRNode;
using IRPtr = std::shared_ptr<const IRNode>;

struct IRNode {
  ExprOp op = ExprOp::Clique;
  int atom_id = -1; // >= 0 for leaves
  IRPtr l, r;
  MarkRef lm, rm; // consumed leaves of the two operands (leaves' atom labels)
};

struct IRContext {
  std::vector<AtomNode> table;
  std::vector<std::pair<int, int>> ranges; // global label ranges, original atoms only
  std::map<int, MarkRef> alias;            // rewritten-away atom -> surviving mark

  MarkRef resolve(MarkRef r) const {
    int guard = 0;
    auto it = alias.find(r.atom);
    while (it != alias.end() && ++guard < 64) {
      r = it->second;
      it = alias.find(r.atom);
    }
    return r;
  }
};

IRPtr make_leaf(const IRContext& C, int atom_id) {
  auto n = std::make_shared<IRNode>();
  n->op = C.table[atom_id].op;
  n->atom_id = atom_id;
  return n;
}

IRPtr make_node(ExprOp op, IRPtr l, IRPtr r, MarkRef lm, MarkRef rm) {
  auto n = std::make_shared<IRNode>();
  n->op = op;
  n->l = std::move(l);
  n->r = std::move(r);
  n->lm = lm;
  n->rm = rm;
  return n;
}

struct IRBuilder {
  IRContext& C;
  const Realization& R;
  std::size_t ai = 0, ui = 0;

  MarkRef locate(int label) const {
    for (std::size_t i = 0; i < C.ranges.size(); ++i)
      if (label >= C.ranges[i].first && label <= C.ranges[i].second)
        return {static_cast<int>(i), label - C.ranges[i].first + 1};
    fail(ErrorKind::Internal, "consumed mark outside every atom range");
  }

  IRPtr build(const GraphExpr& e) {
    switch (e.op) {
      case ExprOp::Clique:
      case ExprOp::Path:
      case ExprOp::Fp:
      case ExprOp::Fan: {
        if (ai >= R.atoms.size()) fail(ErrorKind::Internal, "atom trace out of sync");
        int id = static_cast<int>(C.table.size());
        C.table.push_back({e.op, e.param, e.fan});
        C.ranges.push_back({R.atoms[ai].first_label, R.atoms[ai].last_label});
        ++ai;
        return make_leaf(C, id);
      }
      case ExprOp::Circ:
      case ExprOp::Star: {
        IRPtr l = build(*e.left);
        IRPtr r = build(*e.right);
        if (ui >= R.uses.size()) fail(ErrorKind::Internal, "mark trace out of sync");
        const NodeUse& u = R.uses[ui++];
        return make_node(e.op, std::move(l), std::move(r), locate(u.left_mark),
                         locate(u.right_mark));
      }
    }
    fail(ErrorKind::Internal, "unhandled expression node");
  }
};

std::optional<int> path_t(const IRContext& C, const IRPtr& n) {
  if (!n || n->atom_id < 0) return std::nullopt;
  const AtomNode& a = C.table[n->atom_id];
  if (a.op == ExprOp::Path) return a.param;
  return std::nullopt;
}

// A base edge with one pendant edge per part realizes a path.
bool fan_is_whisker_path(const FanSpec& s) {
  if (s.n != 2 || s.k() < 1) return false;
  for (int i = 0; i < s.k(); ++i)
    if (s.branch_length(i) != 1 || s.a(i, 0) != 2) return false;
  return true;
}

int append_path_atom(IRContext& C, int t) {
  int id = static_cast<int>(C.table.size());
  C.table.push_back({ExprOp::Path, t, {}});
  return id;
}

// Rewrites: single edges become paths, paths absorb into their neighbors. The
// alias map forwards marks of removed atoms to their surviving images.
IRPtr normalize(IRContext& C, const IRPtr& n) { // NOLINT(misc-no-recursion)
  if (n->atom_id >= 0) {
    const AtomNode a = C.table[n->atom_id];
    int t = -1;
    if (a.op == ExprOp::Clique && a.param == 2) t = 2;
    else if (a.op == ExprOp::Fp && a.param <= 2) t = 2 * a.param;
    else if (a.op == ExprOp::Fan && fan_is_whisker_path(a.fan)) t = 2 + a.fan.k();
    if (t < 0) return n;
    int id = append_path_atom(C, t);
    C.alias[n->atom_id] = {id, 1};
    return make_leaf(C, id);
  }
  IRPtr l = normalize(C, n->l);
  IRPtr r = normalize(C, n->r);
  auto lp = path_t(C, l);
  auto rp = path_t(C, r);
  if (n->op == ExprOp::Circ) {
    if (lp && rp) {
      int id = append_path_atom(C, *lp + *rp - 3);
      C.alias[l->atom_id] = {id, 1};
      C.alias[r->atom_id] = {id, 1};
      return make_leaf(C, id);
    }
    if (rp && *rp == 3) { // gluing a three-vertex path changes nothing
      C.alias[r->atom_id] = C.resolve(n->lm);
      return l;
    }
    if (lp && *lp == 3) {
      C.alias[l->atom_id] = C.resolve(n->rm);
      return r;
    }
    if (rp && *rp >= 4) { // deletion-gluing a path = identification-gluing a shorter one
      int id = append_path_atom(C, *rp - 2);
      C.alias[r->atom_id] = {id, 1};
      return make_node(ExprOp::Star, l, make_leaf(C, id), n->lm, {id, 1});
    }
    if (lp && *lp >= 4) {
      int id = append_path_atom(C, *lp - 2);
      C.alias[l->atom_id] = {id, 1};
      return make_node(ExprOp::Star, make_leaf(C, id), r, {id, 1}, n->rm);
    }
  } else if (n->op == ExprOp::Star) {
    if (lp && rp) {
      int id = append_path_atom(C, *lp + *rp - 1);
      C.alias[l->atom_id] = {id, 1};
      C.alias[r->atom_id] = {id, 1};
      return make_leaf(C, id);
    }
  }
  if (l == n->l && r == n->r) return n;
  return make_node(n->op, std::move(l), std::move(r), n->lm, n->rm);
}

// ---------------------------------------------------------------------------
// Bound accumulator with conflict detection.

struct Accum {
  InvariantValue dim, depth, reg;
  std::optional<bool> cm, unmixed;
  std::vector<RuleFire> fired;
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::string> conflicts;

  void fire(const std::string& rule, const std::string& detail) {
    if (seen.insert({rule, detail}).second) fired.push_back({rule, detail});
  }
  void conflict(const std::string& what) { conflicts.push_back(what); }

  void check_cross(const char* name, const InvariantValue& v) {
    if (v.has_lo() && v.has_hi() && v.lo > v.hi)
      conflict(std::string(name) + " bounds crossed: " + num(v.lo) + " > " + num(v.hi));
  }
  void raise_lo(const char* name, InvariantValue& t, long v) {
    if (v < 0) v = 0;
    if (!t.has_lo() || v > t.lo) t.lo = v;
    check_cross(name, t);
  }
  void lower_hi(const char* name, InvariantValue& t, long v) {
    if (v < 0) v = 0;
    if (!t.has_hi() || v < t.hi) t.hi = v;
    check_cross(name, t);
  }
  void apply_lo(const char* name, InvariantValue& t, long v, const std::string& rule,
                const std::string& detail) {
    fire(rule, detail);
    raise_lo(name, t, v);
  }
  void apply_hi(const char* name, InvariantValue& t, long v, const std::string& rule,
                const std::string& detail) {
    fire(rule, detail);
    lower_hi(name, t, v);
  }
  void apply_exact(const char* name, InvariantValue& t, long v, const std::string& rule,
                   const std::string& detail) {
    fire(rule, detail);
    raise_lo(name, t, v);
    lower_hi(name, t, v);
  }
  void apply_flag(const char* name, std::optional<bool>& t, bool v, const std::string& rule,
                  const std::string& detail) {
    fire(rule, detail);
    if (!t) t = v;
    else if (*t != v) conflict(std::string(name) + " flag disagreement");
  }
  void merge_interval(const char* name, InvariantValue& t, const InvariantValue& s) {
    if (s.has_lo()) raise_lo(name, t, s.lo);
    if (s.has_hi()) lower_hi(name, t, s.hi);
  }
  void merge_flag(const char* name, std::optional<bool>& t, const std::optional<bool>& s) {
    if (!s) return;
    if (!t) t = s;
    else if (*t != *s) conflict(std::string(name) + " flag disagreement");
  }
  void merge_family(const FamilyInvariants& f) {
    for (const RuleFire& rf : f.fired) fire(rf.rule, rf.detail);
    merge_interval("dim", dim, f.dim);
    merge_interval("depth", depth, f.depth);
    merge_interval("reg", reg, f.reg);
    merge_flag("cm", cm, f.cm);
    merge_flag("unmixed", unmixed, f.unmixed);
  }
};

// ---------------------------------------------------------------------------
// Operand views used by the composition rules.

struct AtomView {
  bool ok = false;   // a purity-graded block: pure fan (k >= 1) or bipartite block
  bool is_fp = false;
  int p = 0;
  long k = 0;
  long V = 0;
  int atom_id = -1;
  const FanSpec* fan = nullptr;
};

AtomView pseudo_fan_view(const IRContext& C, const IRPtr& n) {
  AtomView v;
  if (!n || n->atom_id < 0) return v;
  const AtomNode& a = C.table[n->atom_id];
  if (a.op == ExprOp::Fp && a.param >= 1) {
    v.ok = true;
    v.is_fp = true;
    v.p = a.param;
    v.k = 2;
    v.V = 2L * a.param;
    v.atom_id = n->atom_id;
  } else if (a.op == ExprOp::Fan && a.fan.k() >= 1 && a.fan.pure()) {
    v.ok = true;
    v.k = a.fan.k();
    v.V = a.fan.total_vertices();
    v.atom_id = n->atom_id;
    v.fan = &a.fan;
  }
  return v;
}

// Purity left after deleting, for every consumed mark, that pendant leaf and
// its base neighbor: a length-1 part disappears, a longer part shifts down.
std::optional<long> purity_after(const IRContext& C, const AtomView& v,
                                 const std::vector<MarkRef>& marks) {
  if (!v.ok) return std::nullopt;
  if (v.is_fp) return 2;
  long q = v.k;
  for (MarkRef r0 : marks) {
    MarkRef r = C.resolve(r0);
    if (r.atom != v.atom_id) return std::nullopt;
    auto b = v.fan->branch_of_leaf_mark(r.local);
    if (!b) return std::nullopt;
    if (v.fan->branch_length(*b) == 1) --q;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Chains of deletion-gluings.

struct ChainInfo {
  std::vector<IRPtr> atoms;                // in path order
  std::vector<std::vector<MarkRef>> marks; // resolved, aligned with atoms
};

bool collect_circ(const IRContext& C, const IRPtr& n, std::vector<IRPtr>& leaves,
                  std::vector<std::pair<MarkRef, MarkRef>>& joints) { // NOLINT(misc-no-recursion)
  if (n->atom_id >= 0) {
    leaves.push_back(n);
    return true;
  }
  if (n->op != ExprOp::Circ) return false;
  if (!collect_circ(C, n->l, leaves, joints)) return false;
  if (!collect_circ(C, n->r, leaves, joints)) return false;
  joints.push_back({C.resolve(n->lm), C.resolve(n->rm)});
  return true;
}

std::optional<ChainInfo> detect_circ_chain(const IRContext& C, const IRPtr& root) {
  if (root->op != ExprOp::Circ) return std::nullopt;
  std::vector<IRPtr> leaves;
  std::vector<std::pair<MarkRef, MarkRef>> joints;
  if (!collect_circ(C, root, leaves, joints)) return std::nullopt;
  int t = static_cast<int>(leaves.size());
  if (t < 2) return std::nullopt;
  std::map<int, int> pos;
  for (int i = 0; i < t; ++i) pos[leaves[i]->atom_id] = i;
  std::vector<std::vector<int>> adj(t);
  std::vector<std::vector<MarkRef>> marks(t);
  for (const auto& [a, b] : joints) {
    auto ia = pos.find(a.atom);
    auto ib = pos.find(b.atom);
    if (ia == pos.end() || ib == pos.end() || ia->second == ib->second) return std::nullopt;
    adj[ia->second].push_back(ib->second);
    adj[ib->second].push_back(ia->second);
    marks[ia->second].push_back(a);
    marks[ib->second].push_back(b);
  }
  std::vector<int> ends;
  for (int i = 0; i < t; ++i) {
    if (adj[i].size() > 2 || adj[i].empty()) return std::nullopt;
    if (adj[i].size() == 1) ends.push_back(i);
  }
  if (ends.size() != 2) return std::nullopt;
  ChainInfo ci;
  std::vector<char> visited(static_cast<std::size_t>(t), 0);
  int cur = std::min(ends[0], ends[1]);
  int prev = -1;
  for (int step = 0; step < t; ++step) {
    if (cur < 0 || visited[cur]) return std::nullopt;
    visited[cur] = 1;
    ci.atoms.push_back(leaves[cur]);
    ci.marks.push_back(marks[cur]);
    int nxt = -1;
    for (int nb : adj[cur])
      if (nb != prev) {
        nxt = nb;
        break;
      }
    prev = cur;
    cur = nxt;
  }
  return ci;
}

// ---------------------------------------------------------------------------
// Composite-wide helpers.

std::optional<long> ell_sum(const IRContext& C, const IRPtr& n, int m) { // NOLINT(misc-no-recursion)
  if (n->atom_id >= 0) {
    const AtomNode& a = C.table[n->atom_id];
    switch (a.op) {
      case ExprOp::Path:
        if (a.param >= 2) return a.param - 1;
        return std::nullopt;
      case ExprOp::Clique:
        if (a.param == 2) return 1;
        return std::nullopt;
      case ExprOp::Fp:
        if (a.param == 1) return 1;
        if (a.param == 2) return 3;
        return m + 1;
      case ExprOp::Fan:
        if (a.fan.pure() && a.fan.k() >= 1 && a.fan.total_vertices() >= 3)
          return static_cast<long>(m) + a.fan.k() - 1;
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }
  auto l = ell_sum(C, n->l, m);
  auto r = ell_sum(C, n->r, m);
  if (l && r) return *l + *r;
  return std::nullopt;
}

bool all_atoms_gluable(const IRContext& C, const IRPtr& n) { // NOLINT(misc-no-recursion)
  if (n->atom_id >= 0) {
    const AtomNode& a = C.table[n->atom_id];
    switch (a.op) {
      case ExprOp::Path: return a.param >= 2;
      case ExprOp::Fp: return a.param >= 1;
      case ExprOp::Fan: return a.fan.k() >= 1;
      case ExprOp::Clique: return a.param == 2;
      default: return false;
    }
  }
  return all_atoms_gluable(C, n->l) && all_atoms_gluable(C, n->r);
}

long atom_max_clique(const AtomNode& a) {
  switch (a.op) {
    case ExprOp::Clique: return a.param;
    case ExprOp::Path: return a.param >= 2 ? 2 : 1;
    case ExprOp::Fp: return 2;
    case ExprOp::Fan: return a.fan.max_clique_size();
    default: return 1;
  }
}

void collect_atoms(const IRPtr& n, std::vector<int>& ids) { // NOLINT(misc-no-recursion)
  if (n->atom_id >= 0) {
    ids.push_back(n->atom_id);
    return;
  }
  collect_atoms(n->l, ids);
  collect_atoms(n->r, ids);
}

// Cliques on >= 3 vertices never contain a pendant leaf, so they survive every
// gluing; an edge always survives.
long composite_clique_floor(const IRContext& C, const IRPtr& root) {
  std::vector<int> ids;
  collect_atoms(root, ids);
  long best = 2;
  for (int id : ids) {
    long c = atom_max_clique(C.table[id]);
    if (c >= 3) best = std::max(best, c);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Root-shape rules.

void star_rules(Accum& acc, const IRContext& C, const IRPtr& root, int m) {
  const IRPtr& L = root->l;
  const IRPtr& R = root->r;
  auto lt = path_t(C, L);
  auto rt = path_t(C, R);
  AtomView lv = pseudo_fan_view(C, L);
  AtomView rv = pseudo_fan_view(C, R);

  auto fan_path = [&](const AtomView& v, int t) {
    if (!v.ok || v.is_fp || v.V - v.k < 3 || t < 2) return;
    long base = std::min(v.V - 1, static_cast<long>(m) + v.k - 1);
    long val = base + t - 1;
    std::string d = "reg = fan reg " + num(base) + " + " + num(t - 1);
    if (m >= v.k) acc.apply_exact("reg", acc.reg, val, "star-fan-path", d);
    else acc.apply_hi("reg", acc.reg, val, "star-fan-path", "reg <= " + num(val));
  };
  if (rt) fan_path(lv, *rt);
  if (lt) fan_path(rv, *lt);

  auto fp_path = [&](const AtomView& v, int t) {
    if (!v.ok || !v.is_fp || t < 2) return;
    long val = std::min(2L * v.p - 1, static_cast<long>(m) + 1) + t - 1;
    acc.apply_exact("reg", acc.reg, val, "star-fp-path", "reg = " + num(val));
  };
  if (rt) fp_path(lv, *rt);
  if (lt) fp_path(rv, *lt);

  if (lv.ok && lv.is_fp && rv.ok && rv.is_fp) {
    int p1 = lv.p, p2 = rv.p;
    if (p1 >= 3 && p2 >= 3) {
      long w = std::max(std::min(2L * p1 - 2, 2L * p2 - 4), std::min(2L * p2 - 2, 2L * p1 - 4));
      if (m <= w)
        acc.apply_exact("reg", acc.reg, 2L * m + 2, "star-ff-additive",
                        "reg = 2m+2 = " + num(2L * m + 2));
    }
    if (p1 == 3 && p2 == 3 && (m == 3 || m == 4))
      acc.apply_hi("reg", acc.reg, 8, "star-f3-f3-upper", "reg <= 8");
  }

  if (lv.ok && rv.ok && lv.k >= 1 && rv.k >= 1 && lv.V - lv.k >= 3 && rv.V - rv.k >= 3) {
    long upl = std::min(lv.V - 1, static_cast<long>(m) + lv.k - 1);
    long upr = std::min(rv.V - 1, static_cast<long>(m) + rv.k - 1);
    acc.apply_hi("reg", acc.reg, upl + upr, "star-sandwich", "reg <= " + num(upl + upr));
    auto ql = purity_after(C, lv, {root->lm});
    auto qr = purity_after(C, rv, {root->rm});
    if (ql && qr) {
      long lo1 = upl + std::min(rv.V - 3, static_cast<long>(m) + *qr - 1);
      long lo2 = upr + std::min(lv.V - 3, static_cast<long>(m) + *ql - 1);
      long lo = std::max(lo1, lo2);
      acc.apply_lo("reg", acc.reg, lo, "star-sandwich", "reg >= " + num(lo));
    }
  }
}

void chain_dimension_rule(Accum& acc, const IRContext& C, const ChainInfo& ci, int m) {
  int T = static_cast<int>(ci.atoms.size());
  auto attempt = [&](bool reversed) -> std::optional<long> {
    auto at = [&](int pos) { return reversed ? T - 1 - pos : pos; };
    for (int pos = 0; pos + 1 < T; ++pos) {
      const AtomNode& a = C.table[ci.atoms[at(pos)]->atom_id];
      if (a.op != ExprOp::Fp || a.param < 3) return std::nullopt;
    }
    const AtomNode& ta = C.table[ci.atoms[at(T - 1)]->atom_id];
    bool tail_fp = false;
    if (ta.op == ExprOp::Fp && ta.param >= 2) {
      tail_fp = true;
    } else if (ta.op == ExprOp::Fan) {
      const FanSpec& s = ta.fan;
      if (s.total_base_marked() == s.n) {
        const std::vector<MarkRef>& ms = ci.marks[at(T - 1)];
        if (ms.size() != 1) return std::nullopt;
        if (ms[0].atom != ci.atoms[at(T - 1)]->atom_id) return std::nullopt;
        auto b = s.branch_of_leaf_mark(ms[0].local);
        if (!b || s.branch_length(*b) < 2) return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
    long sum = 0;
    for (int pos = 0; pos < T; ++pos) {
      const AtomNode& a = C.table[ci.atoms[at(pos)]->atom_id];
      sum += a.op == ExprOp::Fp ? fp_invariants(a.param, m).dim.lo
                                : fan_invariants(a.fan, m).dim.lo;
    }
    long t = T - 1;
    long half_lo = t / 2, half_hi = (t + 1) / 2;
    long s = tail_fp ? 2L * m * half_lo + (m + 2L) * half_hi
                     : 2L * m * half_hi + (m + 2L) * half_lo;
    return sum - s;
  };
  for (bool rev : {false, true}) {
    if (auto d = attempt(rev)) {
      acc.apply_exact("dim", acc.dim, *d, "chain-dimension", "dim = " + num(*d));
      return;
    }
  }
}

void circ_rules(Accum& acc, const IRContext& C, const IRPtr& root, int m, long Vtotal) {
  auto chain = detect_circ_chain(C, root);
  if (!chain) return;
  int t = static_cast<int>(chain->atoms.size());

  chain_dimension_rule(acc, C, *chain, m);

  std::vector<AtomView> views(static_cast<std::size_t>(t));
  bool all_pf = true;
  for (int i = 0; i < t; ++i) {
    views[i] = pseudo_fan_view(C, chain->atoms[i]);
    if (!views[i].ok || views[i].k < 1) all_pf = false;
  }
  if (!all_pf) return;

  std::vector<long> q(static_cast<std::size_t>(t), -1);
  bool qok = true;
  for (int i = 0; i < t; ++i) {
    auto qi = purity_after(C, views[i], chain->marks[i]);
    if (!qi) qok = false;
    else q[i] = *qi;
  }

  long up = 0;
  for (const AtomView& v : views) up += m + v.k - 1;
  acc.apply_hi("reg", acc.reg, up, "multi-circ-upper", "reg <= " + num(up));

  if (qok) {
    bool sizes_ok = true;
    long lo = 0;
    for (int i = 0; i < t; ++i) {
      long del = (i == 0 || i == t - 1) ? 3 : 5;
      if (views[i].V - del < 0) {
        sizes_ok = false;
        break;
      }
      lo += std::min(views[i].V - del, static_cast<long>(m) + q[i] - 1);
    }
    if (sizes_ok) {
      acc.apply_lo("reg", acc.reg, lo, "multi-circ-lower", "reg >= " + num(lo));
      auto exact_ok = [&](bool reversed) {
        for (int pos = 0; pos < t; ++pos) {
          int i = reversed ? t - 1 - pos : pos;
          bool end = (pos == 0 || pos == t - 1);
          const AtomView& v = views[i];
          if (q[i] != v.k) return false;
          if (m > v.V - v.k - (end ? 0 : 4)) return false;
          if (v.is_fp) {
            if (end) {
              if (v.p < (pos == 0 ? 2 : 3)) return false;
            } else if (v.p < 4) {
              return false;
            }
          } else if (v.V - v.k < (end ? 4 : 6)) {
            return false;
          }
        }
        return true;
      };
      if (exact_ok(false) || exact_ok(true))
        acc.apply_exact("reg", acc.reg, lo, "multi-circ-exact", "reg = " + num(lo));
    }
  }

  if (t == 2) {
    const AtomView& v1 = views[0];
    const AtomView& v2 = views[1];
    if (v1.V - v1.k < 3 || v2.V - v2.k < 3) return;
    long sup = std::min(v1.V - 1, static_cast<long>(m) + v1.k - 1) +
               std::min(v2.V - 1, static_cast<long>(m) + v2.k - 1);
    acc.apply_hi("reg", acc.reg, sup, "circ-sandwich", "reg <= " + num(sup));
    if (!qok) return;
    long A = std::min(v1.V - 3, static_cast<long>(m) + q[0] - 1) +
             std::min(v2.V - 3, static_cast<long>(m) + q[1] - 1);
    long B = std::min(Vtotal - 1, static_cast<long>(m) + v1.k + v2.k - 3);
    long Cc = std::min(Vtotal + 1, static_cast<long>(m) + v1.k + v2.k - 2);
    long bound = std::max({A, B, Cc});
    if (q[0] == v1.k && q[1] == v2.k)
      acc.apply_exact("reg", acc.reg, bound, "circ-pseudo-fan-reg", "reg = " + num(bound));
    else
      acc.apply_hi("reg", acc.reg, bound, "circ-pseudo-fan-reg", "reg <= " + num(bound));
    long addv = (m + q[0] - 1) + (m + q[1] - 1);
    if (m <= std::min(v1.V - q[0] - 2, v2.V - q[1] - 2))
      acc.apply_exact("reg", acc.reg, addv, "circ-reg-additive", "reg = " + num(addv));
    else
      acc.apply_hi("reg", acc.reg, addv, "circ-reg-additive", "reg <= " + num(addv));
  }
}

} // namespace

// ---------------------------------------------------------------------------
// Atom families.

FamilyInvariants clique_invariants(int n, int m) {
  if (n < 1 || m < 2) fail(ErrorKind::InvalidInput, "clique family needs n >= 1 and m >= 2");
  FamilyInvariants f;
  long d = static_cast<long>(m) + n - 1;
  long r = std::min(m - 1, n - 1);
  f.dim = {d, d};
  f.depth = {d, d};
  f.reg = {r, r};
  f.cm = true;
  f.unmixed = true;
  f.fired.push_back({"clique-invariants", "dim = depth = " + num(d) + ", reg = " + num(r)});
  return f;
}

FamilyInvariants path_invariants(int t, int m) {
  if (t < 1 || m < 2) fail(ErrorKind::InvalidInput, "path family needs t >= 1 and m >= 2");
  if (t == 1) return clique_invariants(1, m);
  FamilyInvariants f;
  long indep = (static_cast<long>(t) - 1) / 2; // max independent set of inner vertices
  long d = static_cast<long>(m) + t - 1 + indep * (m - 2);
  long dep = static_cast<long>(m) + t - 1;
  long r = t - 1;
  f.dim = {d, d};
  f.depth = {dep, dep};
  f.reg = {r, r};
  f.cm = (d == dep);
  f.unmixed = (m == 2 || t <= 2);
  f.fired.push_back({"path-dimension", "dim = " + num(d)});
  f.fired.push_back({"path-depth", "depth = " + num(dep)});
  f.fired.push_back({"path-reg", "reg = " + num(r)});
  f.fired.push_back({"path-cm", *f.cm ? "cm" : "not cm"});
  return f;
}

FamilyInvariants fp_invariants(int p, int m) {
  if (p < 1 || m < 2) fail(ErrorKind::InvalidInput, "block family needs p >= 1 and m >= 2");
  FamilyInvariants f;
  long dep = static_cast<long>(m) + 2L * p - 1;
  long d = dep + (p - 1L) * (m - 2);
  long r = std::min(2L * p - 1, static_cast<long>(m) + 1);
  f.dim = {d, d};
  f.depth = {dep, dep};
  f.reg = {r, r};
  f.cm = (p == 1 || m == 2);
  f.unmixed = f.cm;
  f.fired.push_back({"fp-dimension", "dim = " + num(d)});
  f.fired.push_back({"fp-depth", "depth = " + num(dep)});
  f.fired.push_back({"fp-reg", "reg = " + num(r)});
  f.fired.push_back({"fp-cm", *f.cm ? "cm" : "not cm"});
  return f;
}

FamilyInvariants fan_invariants(const FanSpec& spec, int m) {
  spec.validate();
  if (m < 2) fail(ErrorKind::InvalidInput, "fan family needs m >= 2");
  FamilyInvariants f;
  const long V = spec.total_vertices();
  const long W = spec.total_base_marked();
  const long n = spec.n;
  const long k = spec.k();
  const long s = std::min(W, n - 1);
  const long d = static_cast<long>(m) + V - 1 + s * (m - 2);
  f.dim = {d, d};
  f.fired.push_back({"fan-dimension", "dim = " + num(d) + " with " + num(s) + " split parts"});
  const long dep = V + m - 1;
  f.depth = {dep, dep};
  f.fired.push_back({"fan-depth", "depth = " + num(dep)});

  auto reg_lo = [&](long v, const std::string& rule, const std::string& det) {
    if (v < 0) v = 0;
    if (!f.reg.has_lo() || v > f.reg.lo) f.reg.lo = v;
    f.fired.push_back({rule, det});
  };
  auto reg_hi = [&](long v, const std::string& rule, const std::string& det) {
    if (v < 0) v = 0;
    if (!f.reg.has_hi() || v < f.reg.hi) f.reg.hi = v;
    f.fired.push_back({rule, det});
  };

  reg_hi(V - 1, "reg-vertex-upper", "reg <= " + num(V - 1));
  long c = spec.max_clique_size();
  reg_lo(std::min(static_cast<long>(m) - 1, c - 1), "reg-clique-lower",
         "reg >= " + num(std::min(static_cast<long>(m) - 1, c - 1)));
  if (m >= V) {
    reg_lo(V - 1, "fan-reg-large-m", "reg = " + num(V - 1));
    reg_hi(V - 1, "fan-reg-large-m", "reg = " + num(V - 1));
  } else {
    long bb = k + (spec.delta() + 1L) * (m - 1);
    reg_hi(bb, "fan-reg-branch-bound", "reg <= " + num(bb));
  }
  long cb = static_cast<long>(spec.clique_count()) * (m - 1);
  reg_hi(cb, "fan-reg-clique-bound", "reg <= " + num(cb));
  if (spec.pure() && k >= 1) {
    long v = std::min(V - 1, static_cast<long>(m) + k - 1);
    reg_lo(v, "pure-fan-reg", "reg = " + num(v));
    reg_hi(v, "pure-fan-reg", "reg = " + num(v));
  }
  bool wide = n > 1 + W && k >= 1;
  for (int i = 0; wide && i < spec.k(); ++i)
    for (int j = 0; wide && j < spec.branch_length(i); ++j)
      if (spec.h(i, j) < m) wide = false;
  if (wide) {
    long v = (spec.clique_count() - 1L) * (m - 1) +
             std::min(static_cast<long>(m) - 1, n - W - 1);
    reg_lo(v, "fan-reg-wide-base", "reg = " + num(v));
    reg_hi(v, "fan-reg-wide-base", "reg = " + num(v));
  }
  bool cmv = (m == 2 || W == 0);
  f.cm = cmv;
  f.unmixed = cmv;
  f.fired.push_back({"fan-cm", cmv ? "cm and unmixed" : "neither cm nor unmixed"});
  return f;
}

// ---------------------------------------------------------------------------

Prediction predict(const ExprPtr& expr, int m, const PredictOptions& opts) {
  if (!expr) fail(ErrorKind::InvalidInput, "empty expression");
  if (m < 2) fail(ErrorKind::InvalidInput, "row count must be at least 2");
  Realization R = realize(expr);
  const long V = R.graph.num_vertices();

  IRContext C;
  IRBuilder builder{C, R};
  IRPtr orig = builder.build(*expr);
  if (builder.ai != R.atoms.size() || builder.ui != R.uses.size())
    fail(ErrorKind::Internal, "expression trace out of sync");

  Accum acc;
  Prediction out;

  auto pass = [&](const IRPtr& root) {
    if (root->atom_id >= 0) {
      const AtomNode& a = C.table[root->atom_id];
      switch (a.op) {
        case ExprOp::Clique: acc.merge_family(clique_invariants(a.param, m)); break;
        case ExprOp::Path: acc.merge_family(path_invariants(a.param, m)); break;
        case ExprOp::Fp: acc.merge_family(fp_invariants(a.param, m)); break;
        case ExprOp::Fan: acc.merge_family(fan_invariants(a.fan, m)); break;
        default: break;
      }
      return;
    }
    if (auto s = ell_sum(C, root, m))
      acc.apply_hi("reg", acc.reg, *s, "composite-reg-upper", "reg <= " + num(*s));
    if (all_atoms_gluable(C, root))
      acc.apply_exact("depth", acc.depth, m + V - 1, "glued-depth",
                      "depth = " + num(m + V - 1));
    if (root->op == ExprOp::Star) star_rules(acc, C, root, m);
    if (root->op == ExprOp::Circ) circ_rules(acc, C, root, m, V);
  };

  pass(orig);
  IRPtr normd = normalize(C, orig);
  pass(normd);

  if (V >= 2 && m >= V)
    acc.apply_exact("reg", acc.reg, V - 1, "reg-large-m", "reg = " + num(V - 1));
  acc.apply_hi("reg", acc.reg, V - 1, "reg-vertex-upper", "reg <= " + num(V - 1));
  {
    long c = orig->atom_id >= 0 ? atom_max_clique(C.table[orig->atom_id])
                                : composite_clique_floor(C, orig);
    if (c >= 2) {
      long v = std::min(static_cast<long>(m) - 1, c - 1);
      acc.apply_lo("reg", acc.reg, v, "reg-clique-lower", "reg >= " + num(v));
    }
  }
  if (V <= opts.cutset_cap) {
    CombinatorialDim cd = combinatorial_dim(R.graph, m, opts.cutset_cap);
    out.comb_dim = cd.dim;
    out.comb_witness = cd.witness;
    acc.apply_exact("dim", acc.dim, cd.dim, "dim-combinatorial",
                    "dim = " + num(cd.dim) + " at separator " + set_text(cd.witness));
  } else {
    acc.apply_lo("dim", acc.dim, m + V - 1, "dim-range", "dim >= " + num(m + V - 1));
    acc.apply_hi("dim", acc.dim, static_cast<long>(m) * V, "dim-range",
                 "dim <= " + num(static_cast<long>(m) * V));
  }

  if (acc.dim.exact() && acc.depth.exact())
    acc.apply_flag("cm", acc.cm, acc.dim.lo == acc.depth.lo, "cm-depth-dim",
                   acc.dim.lo == acc.depth.lo ? "depth equals dim" : "depth below dim");
  if (acc.cm && *acc.cm)
    acc.apply_flag("unmixed", acc.unmixed, true, "unmixed-from-cm", "cm implies unmixed");
  if (acc.depth.has_lo() && acc.dim.has_hi() && acc.depth.lo > acc.dim.hi)
    acc.conflict("depth exceeds dimension");

  out.dim = acc.dim;
  out.depth = acc.depth;
  out.reg = acc.reg;
  out.cm = acc.cm;
  out.unmixed = acc.unmixed;
  out.fired = acc.fired;
  out.contradiction = !acc.conflicts.empty();
  if (out.contradiction) {
    std::ostringstream os;
    for (std::size_t i = 0; i < acc.conflicts.size(); ++i) {
      if (i) os << "; ";
      os << acc.conflicts[i];
    }
    out.contradiction_detail = os.str();
  }
  return out;
}

} // namespace bei
