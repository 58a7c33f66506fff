// End-to-end acceptance checks: every closed-form prediction the engine makes
// for the curated families is compared against algebraic ground truth within
// a fixed time budget. One line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bei/commands.hpp"
#include "bei/cutsets.hpp"
#include "bei/formulas.hpp"
#include "bei/groebner.hpp"
#include "bei/parser.hpp"
#include "bei/resolution.hpp"

using namespace bei;

namespace {

struct PureRun {
  std::string expr;
  int m = 0;
  long dim = -1, depth = -1, reg = -1; // ground truth at the default prime
  long fdepth = -1, freg = -1;         // closed-form values
};

std::vector<PureRun> g_pure;              // criteria 3/4, reused by 10
std::vector<PureRun> g_fp;                // criterion 5, reused by 10
std::vector<VerdictReport> g_composites;  // criterion 7, reused by 8
std::vector<SuiteCase> g_composite_cases;

struct Truth {
  long dim = -1, depth = -1, reg = -1;
};

// dim from a basis of the ideal, depth/reg from the minimal resolution.
Truth ground_truth(const Graph& g, int m, long characteristic,
                   std::optional<int> reg_hint) {
  GraphRing ring = make_graph_ring(g, m, static_cast<uint32_t>(characteristic));
  std::vector<Poly> gens = build_ideal_generators(ring, g);
  Truth t;
  t.dim = oracle_dim(ring.ctx, gens);
  ResOptions ro;
  ro.reg_bound = reg_hint;
  BettiTable b = minimal_graded_resolution(ring.ctx, gens, ro);
  t.depth = b.depth();
  t.reg = b.reg();
  return t;
}

const InvariantReport* row(const VerdictReport& r, const std::string& name) {
  for (const InvariantReport& x : r.rows)
    if (x.invariant == name) return &x;
  return nullptr;
}

// Fold the intersection of the listed ideals, reusing the reduced output of
// each step as the next left operand.
std::vector<Poly> intersect_all(const RingContext& ctx,
                                const std::vector<std::vector<Poly>>& ideals) {
  std::vector<Poly> acc = ideals.front();
  for (std::size_t i = 1; i < ideals.size(); ++i)
    acc = ideal_intersection(ctx, acc, ideals[i]);
  return acc;
}

bool criterion1(std::string& why) {
  for (int m : {2, 3})
    for (int n : {2, 3}) {
      Graph g = complete_graph_on([&] {
        VertexSet v;
        for (int i = 1; i <= n; ++i) v.push_back(i);
        return v;
      }());
      FamilyInvariants f = clique_invariants(n, m);
      Truth t = ground_truth(g, m, 32003, static_cast<int>(f.reg.hi));
      if (t.dim != f.dim.lo || t.depth != f.depth.lo || t.reg != f.reg.lo) {
        std::ostringstream os;
        os << "K(" << n << ") m=" << m << " got dim/depth/reg " << t.dim << "/" << t.depth
           << "/" << t.reg;
        why = os.str();
        return false;
      }
    }
  return true;
}

bool criterion2(std::string& why) {
  int checked = 0;
  for (const SuiteCase& c : suite_cases("fans", 0, kDefaultSeed)) {
    ExprPtr e = parse_expr(c.expr);
    Realization r = realize(e);
    long V = r.graph.num_vertices();
    if (static_cast<long>(c.m) * V > 24) continue;
    FamilyInvariants f = fan_invariants(e->fan, c.m);
    CombinatorialDim cd = combinatorial_dim(r.graph, c.m);
    GraphRing ring = make_graph_ring(r.graph, c.m);
    long od = oracle_dim(ring.ctx, build_ideal_generators(ring, r.graph));
    ++checked;
    if (!f.dim.exact() || f.dim.lo != cd.dim || cd.dim != od) {
      std::ostringstream os;
      os << c.expr << " m=" << c.m << ": formula " << f.dim.lo << ", scan " << cd.dim
         << ", basis " << od;
      why = os.str();
      return false;
    }
  }
  if (checked < 54) {
    why = "only " + std::to_string(checked) + " fan cases ran";
    return false;
  }
  return true;
}

bool criterion3(std::string& why) {
  for (const SuiteCase& c : suite_cases("pure", 0, kDefaultSeed)) {
    ExprPtr e = parse_expr(c.expr);
    Realization r = realize(e);
    long V = r.graph.num_vertices();
    if (static_cast<long>(c.m) * V > 18) continue;
    Prediction p = predict(e, c.m);
    if (!p.depth.exact() || !p.reg.exact()) {
      why = c.expr + ": closed form not exact";
      return false;
    }
    Truth t = ground_truth(r.graph, c.m, 32003, static_cast<int>(p.reg.hi));
    PureRun run{c.expr, c.m, t.dim, t.depth, t.reg, p.depth.lo, p.reg.lo};
    g_pure.push_back(run);
    if (t.depth != V + c.m - 1 || t.depth != p.depth.lo) {
      std::ostringstream os;
      os << c.expr << " m=" << c.m << ": depth " << t.depth << " vs " << V + c.m - 1;
      why = os.str();
      return false;
    }
  }
  if (g_pure.size() != 9) {
    why = "expected 9 pure cases, ran " + std::to_string(g_pure.size());
    return false;
  }
  return true;
}

bool criterion4(std::string& why) {
  if (g_pure.size() != 9) {
    why = "no stored pure runs";
    return false;
  }
  for (const PureRun& r : g_pure) {
    if (r.reg != r.freg) {
      std::ostringstream os;
      os << r.expr << " m=" << r.m << ": reg " << r.reg << " vs closed form " << r.freg;
      why = os.str();
      return false;
    }
  }
  return true;
}

bool criterion5(std::string& why) {
  for (const SuiteCase& c : suite_cases("fp", 0, kDefaultSeed)) {
    ExprPtr e = parse_expr(c.expr);
    int p = e->param;
    FamilyInvariants f = fp_invariants(p, c.m);
    Realization r = realize(e);
    Truth t = ground_truth(r.graph, c.m, 32003, static_cast<int>(f.reg.hi));
    PureRun run{c.expr, c.m, t.dim, t.depth, t.reg, f.depth.lo, f.reg.lo};
    g_fp.push_back(run);
    bool cm_formula = (p == 1 || c.m == 2);
    if (t.dim != f.dim.lo || t.depth != f.depth.lo || t.reg != f.reg.lo ||
        (t.depth == t.dim) != cm_formula) {
      std::ostringstream os;
      os << c.expr << " m=" << c.m << ": got " << t.dim << "/" << t.depth << "/" << t.reg
         << " want " << f.dim.lo << "/" << f.depth.lo << "/" << f.reg.lo;
      why = os.str();
      return false;
    }
  }
  if (g_fp.size() != 6) {
    why = "expected 6 block cases, ran " + std::to_string(g_fp.size());
    return false;
  }
  return true;
}

bool criterion6(std::string& why) {
  std::vector<std::pair<std::string, Graph>> targets;
  std::set<std::string> seen;
  for (const SuiteCase& c : suite_cases("fans", 0, kDefaultSeed)) {
    if (c.m != 2 || !seen.insert(c.expr).second) continue;
    Realization r = realize(parse_expr(c.expr));
    if (r.graph.num_vertices() <= 5) targets.push_back({c.expr, r.graph});
  }
  if (targets.size() != 12) {
    why = "expected 12 small fans, found " + std::to_string(targets.size());
    return false;
  }
  for (const char* extra : {"Fp(1)", "Fp(2)"})
    targets.push_back({extra, realize(parse_expr(extra)).graph});

  for (const auto& [name, g] : targets) {
    GraphRing ring = make_graph_ring(g, 2);
    std::vector<Poly> target = build_ideal_generators(ring, g);
    std::vector<CutSetRecord> family = cut_point_sets(g);
    std::vector<std::vector<Poly>> primes;
    primes.reserve(family.size());
    for (const CutSetRecord& rec : family)
      primes.push_back(build_PT_ideal(ring, g, rec.T));
    if (!ideal_equal(ring.ctx, intersect_all(ring.ctx, primes), target)) {
      why = name + ": prime intersection differs from the ideal";
      return false;
    }
    VertexSet internal;
    for (const CutSetRecord& rec : family)
      for (int v : rec.T)
        if (std::find(internal.begin(), internal.end(), v) == internal.end())
          internal.push_back(v);
    for (int v : internal) {
      std::vector<std::vector<Poly>> with, without;
      for (std::size_t i = 0; i < family.size(); ++i) {
        bool has = std::find(family[i].T.begin(), family[i].T.end(), v) != family[i].T.end();
        (has ? with : without).push_back(primes[i]);
      }
      std::vector<Poly> merged;
      if (with.empty()) {
        merged = intersect_all(ring.ctx, without);
      } else if (without.empty()) {
        merged = intersect_all(ring.ctx, with);
      } else {
        merged = ideal_intersection(ring.ctx, intersect_all(ring.ctx, without),
                                    intersect_all(ring.ctx, with));
      }
      if (!ideal_equal(ring.ctx, merged, target)) {
        std::ostringstream os;
        os << name << ": regrouped intersection at vertex " << v << " differs";
        why = os.str();
        return false;
      }
    }
  }
  return true;
}

bool criterion7(std::string& why) {
  g_composite_cases = suite_cases("composites", 0, kDefaultSeed);
  CommandOptions opt;
  for (const SuiteCase& c : g_composite_cases) {
    CommandOptions o = opt;
    o.m = c.m;
    VerdictReport rep = run_verify(c.expr, o, nullptr);
    g_composites.push_back(rep);
    long V = realize(parse_expr(c.expr)).graph.num_vertices();
    const InvariantReport* d = row(rep, "depth");
    if (!d || !d->oracle || *d->oracle != c.m + V - 1 ||
        d->verdict != Verdict::ExactMatch) {
      std::ostringstream os;
      os << c.expr << ": depth ";
      if (d && d->oracle) os << *d->oracle;
      else os << "unavailable";
      os << " want " << c.m + V - 1;
      why = os.str();
      return false;
    }
  }
  return true;
}

bool criterion8(std::string& why) {
  if (g_composites.size() != 20) {
    why = "no stored composite runs";
    return false;
  }
  for (std::size_t i = 0; i < g_composites.size(); ++i) {
    const VerdictReport& rep = g_composites[i];
    const InvariantReport* r = row(rep, "reg");
    if (!r || !r->oracle) {
      why = rep.expr + ": no regularity oracle";
      return false;
    }
    if (r->verdict == Verdict::Violation || rep.contradiction) {
      why = rep.expr + ": regularity verdict " + verdict_name(r->verdict);
      return false;
    }
    if (r->predicted.exact() && r->verdict != Verdict::ExactMatch) {
      why = rep.expr + ": exact prediction missed";
      return false;
    }
  }
  auto oracle_reg = [&](std::size_t i) { return *row(g_composites[i], "reg")->oracle; };
  if (oracle_reg(0) != 6) {
    why = "glued double-block regularity is " + std::to_string(oracle_reg(0)) + ", want 6";
    return false;
  }
  if (oracle_reg(4) != 5) {
    why = "block-path star regularity is " + std::to_string(oracle_reg(4)) + ", want 5";
    return false;
  }
  return true;
}

bool criterion9(std::string& why) {
  std::vector<long> want = {8, 11};
  std::vector<SuiteCase> cases = suite_cases("chains", 0, kDefaultSeed);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Prediction p = predict(parse_expr(cases[i].expr), cases[i].m);
    if (p.contradiction || !p.dim.exact() || p.dim.lo != want[i] || !p.comb_dim ||
        *p.comb_dim != want[i]) {
      std::ostringstream os;
      os << cases[i].expr << ": dim [" << p.dim.lo << "," << p.dim.hi << "] scan "
         << (p.comb_dim ? std::to_string(*p.comb_dim) : std::string("none")) << " want "
         << want[i];
      why = os.str();
      return false;
    }
    bool chained = std::any_of(p.fired.begin(), p.fired.end(), [](const RuleFire& f) {
      return f.rule == "chain-dimension";
    });
    if (!chained) {
      why = cases[i].expr + ": chain rule did not fire";
      return false;
    }
  }
  return true;
}

bool criterion10(std::string& why) {
  std::vector<SuiteCase> cases = suite_cases("random", 200, kDefaultSeed);
  if (cases.size() != 200) {
    why = "expected 200 random cases";
    return false;
  }
  for (const SuiteCase& c : cases) {
    Prediction p = predict(parse_expr(c.expr), c.m);
    bool sane = !p.contradiction;
    if (p.depth.has_lo() && p.dim.has_hi() && p.depth.lo > p.dim.hi) sane = false;
    if (p.reg.has_lo() && p.reg.has_hi() && p.reg.lo > p.reg.hi) sane = false;
    if (!sane) {
      why = c.expr + " m=" + std::to_string(c.m) + ": contradictory prediction";
      return false;
    }
  }
  for (const PureRun& r : g_pure) {
    Realization real = realize(parse_expr(r.expr));
    Truth t = ground_truth(real.graph, r.m, kSecondPrime, static_cast<int>(r.freg));
    if (t.dim != r.dim || t.depth != r.depth || t.reg != r.reg) {
      why = r.expr + ": answers changed with the characteristic";
      return false;
    }
  }
  for (const PureRun& r : g_fp) {
    Realization real = realize(parse_expr(r.expr));
    Truth t = ground_truth(real.graph, r.m, kSecondPrime, static_cast<int>(r.freg));
    if (t.dim != r.dim || t.depth != r.depth || t.reg != r.reg) {
      why = r.expr + ": answers changed with the characteristic";
      return false;
    }
  }
  return true;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    double budget_seconds;
    bool (*body)(std::string&);
  };
  const std::vector<Criterion> list = {
      {1, "clique ground truth", 10, criterion1},
      {2, "fan dimension three ways", 600, criterion2},
      {3, "pure-family depth", 900, criterion3},
      {4, "pure-family regularity", 1200, criterion4},
      {5, "bipartite block invariants and the CM boundary", 600, criterion5},
      {6, "prime decompositions and regrouped intersections", 600, criterion6},
      {7, "composite depth", 900, criterion7},
      {8, "composite regularity verdicts", 900, criterion8},
      {9, "chain dimension against the separator scan", 60, criterion9},
      {10, "random sanity and characteristic independence", 1800, criterion10},
  };

  int failures = 0;
  for (const Criterion& c : list) {
    std::string why;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      ok = false;
      if (!why.empty()) why += "; ";
      why += "over budget";
    }
    char line[512];
    std::snprintf(line, sizeof(line), "[%s] criterion %d: %s (%.1fs)%s%s",
                  ok ? "PASS" : "FAIL", c.id, c.label, secs, why.empty() ? "" : " -- ",
                  why.c_str());
    std::cout << line << std::endl;
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
