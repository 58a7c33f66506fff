#include "bei/commands.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "bei/cutsets.hpp"
#include "bei/error.hpp"
#include "bei/groebner.hpp"
#include "bei/parser.hpp"
#include "bei/resolution.hpp"
#include "bei/ring.hpp"
#include "bei/version.hpp"

namespace bei {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string betti_to_text(const BettiTable& t) {
  nlohmann::json e = nlohmann::json::array();
  for (const auto& [ij, c] : t.entries) e.push_back({ij.first, ij.second, c});
  nlohmann::json j;
  j["entries"] = std::move(e);
  return j.dump();
}

BettiTable betti_from_text(const std::string& s, int nvars) {
  BettiTable t;
  t.nvars = nvars;
  nlohmann::json j = nlohmann::json::parse(s);
  for (const auto& row : j.at("entries"))
    t.entries[{row.at(0).get<int>(), row.at(1).get<int>()}] = row.at(2).get<long>();
  return t;
}

// Fetch-or-compute with optional audit: on an audited hit the value is
// recomputed and must agree with the stored one.
std::string cached_value(Cache* cache, const std::string& key, bool audit,
                         const std::function<std::string()>& compute) {
  std::optional<std::string> hit;
  if (cache && cache->enabled()) hit = cache->get(key);
  if (hit && !audit) return *hit;
  std::string fresh = compute();
  if (hit) {
    ++cache->stats().audits;
    if (*hit != fresh)
      fail(ErrorKind::Internal, "cache audit mismatch for key: " + key);
    return fresh;
  }
  if (cache && cache->enabled()) cache->put(key, fresh);
  return fresh;
}

} // namespace

OracleResult compute_oracle(const Graph& g, int m, const CommandOptions& opt,
                            std::optional<long> reg_hint, Cache* cache, bool audit) {
  OracleResult out;
  const long nvars = static_cast<long>(m) * g.num_vertices();
  const std::string gtxt = g.to_string();

  if (nvars <= opt.gb_cap) {
    auto t0 = std::chrono::steady_clock::now();
    std::string key = oracle_cache_key("dim", gtxt, m, opt.characteristic, "degrevlex");
    std::string val = cached_value(cache, key, audit, [&] {
      GraphRing ring = make_graph_ring(g, m, static_cast<uint32_t>(opt.characteristic));
      std::vector<Poly> gens = build_ideal_generators(ring, g);
      GBOptions gbo;
      gbo.var_cap = static_cast<int>(opt.gb_cap);
      return std::to_string(oracle_dim(ring.ctx, gens, gbo));
    });
    out.dim = std::stol(val);
    out.dim_ms = ms_since(t0);
  } else {
    out.note += "dim oracle skipped (" + std::to_string(nvars) + " vars > cap " +
                std::to_string(opt.gb_cap) + "); ";
  }

  if (nvars <= opt.res_cap) {
    auto t0 = std::chrono::steady_clock::now();
    std::string key = oracle_cache_key("betti", gtxt, m, opt.characteristic, "degrevlex");
    std::string val = cached_value(cache, key, audit, [&] {
      GraphRing ring = make_graph_ring(g, m, static_cast<uint32_t>(opt.characteristic));
      std::vector<Poly> gens = build_ideal_generators(ring, g);
      ResOptions ro;
      ro.var_cap = static_cast<int>(opt.res_cap);
      if (reg_hint) ro.reg_bound = static_cast<int>(*reg_hint);
      return betti_to_text(minimal_graded_resolution(ring.ctx, gens, ro));
    });
    BettiTable t = betti_from_text(val, static_cast<int>(nvars));
    ResolutionInvariants inv = invariants_from_betti(t, out.dim);
    out.depth = inv.depth;
    out.reg = inv.reg;
    out.cm = inv.cm;
    out.res_ms = ms_since(t0);
  } else {
    out.note += "resolution oracle skipped (" + std::to_string(nvars) + " vars > cap " +
                std::to_string(opt.res_cap) + "); ";
  }

  if (out.dim && out.depth) out.cm = (*out.dim == *out.depth);

  if (g.num_vertices() <= opt.cutset_cap) {
    std::set<long> dims;
    for (const CutSetRecord& rec : cut_point_sets(g, opt.cutset_cap))
      dims.insert(minimal_prime_dim(g, rec.T, m));
    out.unmixed = dims.size() == 1;
  } else {
    out.note += "unmixed oracle skipped (vertex count > cap); ";
  }
  return out;
}

VerdictReport run_verify(const std::string& expr_text, const CommandOptions& opt,
                         Cache* cache, bool audit) {
  ExprPtr e = parse_expr(expr_text);
  PredictOptions popt;
  popt.cutset_cap = opt.cutset_cap;
  Prediction pred = predict(e, opt.m, popt);
  Realization R = realize(e);

  VerdictReport rep;
  rep.expr = emit_expr(e);
  rep.graph = R.graph.to_string();
  rep.m = opt.m;
  rep.characteristic = opt.characteristic;
  rep.fired = pred.fired;
  rep.contradiction = pred.contradiction;
  rep.contradiction_detail = pred.contradiction_detail;
  rep.comb_dim = pred.comb_dim;

  OracleResult orc;
  if (!opt.formula_only) {
    std::optional<long> hint;
    if (pred.reg.has_hi() && !pred.contradiction) hint = pred.reg.hi;
    orc = compute_oracle(R.graph, opt.m, opt, hint, cache, audit);
    rep.notes = orc.note;
  }

  auto add = [&](const char* name, const InvariantValue& p, std::optional<long> oracle,
                 double ms) {
    rep.rows.push_back({name, p, oracle, judge(p, oracle), ms});
  };
  auto flag_oracle = [](const std::optional<bool>& b) -> std::optional<long> {
    if (!b) return std::nullopt;
    return *b ? 1 : 0;
  };
  add("dim", pred.dim, orc.dim, orc.dim_ms);
  add("depth", pred.depth, orc.depth, orc.res_ms);
  add("reg", pred.reg, orc.reg, 0.0);
  add("cm", flag_interval(pred.cm), flag_oracle(orc.cm), 0.0);
  add("unmixed", flag_interval(pred.unmixed), flag_oracle(orc.unmixed), 0.0);
  return rep;
}

int cmd_predict(const std::string& expr_text, const CommandOptions& opt, std::ostream& out) {
  CommandOptions o = opt;
  o.formula_only = true;
  VerdictReport rep = run_verify(expr_text, o, nullptr);
  out << (opt.csv ? reports_to_csv({rep}) : report_to_json(rep));
  return rep.contradiction ? 1 : 0;
}

int cmd_oracle(const std::string& expr_text, const CommandOptions& opt, std::ostream& out) {
  ExprPtr e = parse_expr(expr_text);
  Realization R = realize(e);
  Cache cache = opt.cache_dir.empty() ? Cache::from_env() : Cache(opt.cache_dir);
  OracleResult orc = compute_oracle(R.graph, opt.m, opt, std::nullopt, &cache);

  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["kernel"] = {{"name", kKernelName}, {"version", kKernelVersion}};
  j["expr"] = emit_expr(e);
  j["graph"] = R.graph.to_string();
  j["m"] = opt.m;
  j["characteristic"] = opt.characteristic;
  auto put = [&](const char* name, const std::optional<long>& v) {
    j["oracle"][name] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  put("dim", orc.dim);
  put("depth", orc.depth);
  put("reg", orc.reg);
  j["oracle"]["cm"] = orc.cm ? nlohmann::ordered_json(*orc.cm) : nlohmann::ordered_json(nullptr);
  j["oracle"]["unmixed"] =
      orc.unmixed ? nlohmann::ordered_json(*orc.unmixed) : nlohmann::ordered_json(nullptr);
  j["ms"] = {{"dim", orc.dim_ms}, {"resolution", orc.res_ms}};
  if (!orc.note.empty()) j["notes"] = orc.note;
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& expr_text, const CommandOptions& opt, std::ostream& out) {
  Cache cache = opt.cache_dir.empty() ? Cache::from_env() : Cache(opt.cache_dir);
  VerdictReport rep = run_verify(expr_text, opt, &cache);
  out << (opt.csv ? reports_to_csv({rep}) : report_to_json(rep));
  return rep.any_violation() ? 1 : 0;
}

int cmd_decompose(const std::string& expr_text, const CommandOptions& opt, std::ostream& out) {
  ExprPtr e = parse_expr(expr_text);
  Realization R = realize(e);
  const Graph& g = R.graph;
  std::vector<CutSetRecord> recs = cut_point_sets(g, opt.cutset_cap);
  CombinatorialDim cd = combinatorial_dim(g, opt.m, opt.cutset_cap);

  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["kernel"] = {{"name", kKernelName}, {"version", kKernelVersion}};
  j["expr"] = emit_expr(e);
  j["graph"] = g.to_string();
  j["m"] = opt.m;
  auto rows = nlohmann::ordered_json::array();
  for (const CutSetRecord& rec : recs) {
    nlohmann::ordered_json x;
    x["T"] = rec.T;
    x["components"] = rec.components.size();
    x["dim"] = minimal_prime_dim(g, rec.T, opt.m);
    rows.push_back(std::move(x));
  }
  j["cut_sets"] = std::move(rows);
  j["dim"] = cd.dim;
  j["witness"] = cd.witness;

  bool failed = false;
  if (opt.check_ideal) {
    long nvars = static_cast<long>(opt.m) * g.num_vertices();
    if (nvars > opt.gb_cap || recs.size() > 40) {
      j["ideal_check"] = "skipped";
    } else {
      GraphRing ring = make_graph_ring(g, opt.m, static_cast<uint32_t>(opt.characteristic));
      std::vector<Poly> target = build_ideal_generators(ring, g);
      std::vector<Poly> inter = build_PT_ideal(ring, g, recs.front().T);
      for (std::size_t i = 1; i < recs.size(); ++i)
        inter = ideal_intersection(ring.ctx, inter, build_PT_ideal(ring, g, recs[i].T));
      bool equal = ideal_equal(ring.ctx, inter, target);
      j["ideal_check"] = equal ? "equal" : "FAILED";
      failed = !equal;
    }
  }
  out << j.dump(2) << "\n";
  return failed ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Deterministic case families.

namespace {

std::string fan_text(int n, std::vector<std::vector<int>> w, std::vector<std::vector<int>> a) {
  FanSpec s;
  s.n = n;
  s.partition = std::move(w);
  s.branch_sizes = std::move(a);
  return emit_expr(expr_fan(std::move(s)));
}

struct RandGen {
  std::mt19937_64 rng;

  explicit RandGen(unsigned long seed) : rng(seed) {}

  int ri(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  static int survivors(const GraphExpr& e) { // NOLINT(misc-no-recursion)
    switch (e.op) {
      case ExprOp::Clique: return e.param == 2 ? 2 : 0;
      case ExprOp::Path: return e.param >= 2 ? 2 : 0;
      case ExprOp::Fp: return 2;
      case ExprOp::Fan: return static_cast<int>(e.fan.designated_marks().size());
      case ExprOp::Circ:
      case ExprOp::Star: return survivors(*e.left) + survivors(*e.right) - 2;
    }
    return 0;
  }

  ExprPtr atom(bool need_leaf) {
    switch (ri(0, need_leaf ? 2 : 3)) {
      case 0: return expr_path(ri(2, 5));
      case 1: return expr_fp(ri(1, 3));
      case 2: {
        FanSpec s;
        s.n = ri(2, 4);
        int k = ri(need_leaf ? 1 : 0, 2);
        for (int i = 0; i < k; ++i) {
          bool long_branch = (k == 1 && ri(0, 1) == 1);
          if (long_branch) {
            s.partition.push_back({1, 2});
            s.branch_sizes.push_back({2, ri(3, 4)});
          } else {
            s.partition.push_back({i + 1});
            s.branch_sizes.push_back({need_leaf && i == 0 ? 2 : ri(2, 4)});
          }
        }
        return expr_fan(std::move(s));
      }
      default: return expr_clique(ri(1, 4));
    }
  }

  ExprPtr gen(int depth, bool need_leaf, bool forbid_edge) { // NOLINT(misc-no-recursion)
    for (int attempt = 0; attempt < 24; ++attempt) {
      ExprPtr e;
      if (depth == 0 || ri(0, 2) == 0) {
        e = atom(need_leaf);
      } else {
        bool is_circ = ri(0, 1) == 0;
        ExprPtr l = gen(depth - 1, true, is_circ);
        ExprPtr r = gen(depth - 1, true, is_circ);
        if (!l || !r) continue;
        e = is_circ ? expr_circ(std::move(l), std::move(r))
                    : expr_star(std::move(l), std::move(r));
      }
      if (need_leaf && survivors(*e) < 1) continue;
      if (forbid_edge && expr_vertex_count(*e) < 3) continue;
      if (expr_vertex_count(*e) > 20) continue;
      return e;
    }
    return nullptr;
  }
};

} // namespace

std::vector<SuiteCase> suite_cases(const std::string& family, int random_count,
                                   unsigned long seed) {
  std::vector<SuiteCase> out;
  auto add = [&](std::string e, int m, bool fo = false) {
    out.push_back({std::move(e), m, fo});
  };
  const bool all = family == "all";
  bool known = all;

  if (all || family == "fans") {
    known = true;
    for (int n : {2, 3, 4}) {
      std::vector<std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>>
          shapes;
      for (int a1 : {2, 3}) shapes.push_back({{{1}}, {{a1}}});
      for (int a1 : {2, 3})
        for (int a2 : {3, 4}) shapes.push_back({{{1, 2}}, {{a1, a2}}});
      for (auto [s1, s2] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
        shapes.push_back({{{1}, {2}}, {{s1}, {s2}}});
      for (const auto& sh : shapes)
        for (int m : {2, 3}) add(fan_text(n, sh.first, sh.second), m);
    }
  }
  if (all || family == "pure") {
    known = true;
    add(fan_text(2, {{1}}, {{2}}), 2);
    add(fan_text(2, {{1}}, {{2}}), 3);
    add(fan_text(3, {{1}}, {{2}}), 2);
    add(fan_text(3, {{1}}, {{2}}), 3);
    add(fan_text(3, {{1}, {2}}, {{2}, {2}}), 2);
    add(fan_text(4, {{1}}, {{2}}), 2);
    add(fan_text(3, {{1, 2}}, {{2, 3}}), 2);
    add("Fp(2)", 2);
    add("Fp(3)", 2);
  }
  if (all || family == "fp") {
    known = true;
    for (int p : {1, 2, 3})
      for (int m : {2, 3})
        if (2L * p * m <= 18) add("Fp(" + std::to_string(p) + ")", m);
  }
  if (all || family == "composites") {
    known = true;
    const char* whisker3 = "fan(3; W=[[1]]; a=[[2]])";
    std::vector<std::string> cases = {
        "circ(Fp(3), Fp(3))",
        "circ(Fp(3), Fp(2))",
        "circ(Fp(2), Fp(2))",
        "star(Fp(3), Fp(2))",
        "star(Fp(2), path(3))",
        "star(Fp(3), path(3))",
        std::string("circ(") + whisker3 + ", Fp(3))",
        std::string("circ(") + whisker3 + ", " + whisker3 + ")",
        std::string("star(") + whisker3 + ", path(4))",
        "circ(fan(4; W=[[1]]; a=[[2]]), path(5))",
        "circ(fan(3; W=[[1],[2]]; a=[[2],[2]]), Fp(3))",
        "star(fan(3; W=[[1],[2]]; a=[[2],[2]]), Fp(2))",
        "circ(fan(3; W=[[1,2]]; a=[[2,3]]), Fp(2))",
        "star(fan(3; W=[[1,2]]; a=[[2,3]]), path(3))",
        "circ(Fp(3), fan(3; W=[[1,2]]; a=[[2,3]]))",
        "star(Fp(2), fan(4; W=[[1]]; a=[[2]]))",
        "circ(star(Fp(2), Fp(2)), Fp(2))",
        "circ(circ(Fp(2), Fp(3)), Fp(2))",
        "star(fan(2; W=[[1]]; a=[[2]]), Fp(3))",
        "circ(fan(4; W=[[1],[2]]; a=[[2],[2]]), fan(3; W=[[1]]; a=[[2]]))",
    };
    for (const std::string& c : cases) add(c, 2);
  }
  if (all || family == "chains") {
    known = true;
    add("circ(Fp(3), Fp(2))", 2);
    add("circ(circ(Fp(3), Fp(3)), Fp(2))", 2);
  }
  if (all || family == "random") {
    known = true;
    RandGen gen(seed);
    for (int i = 0; i < random_count; ++i) {
      ExprPtr e = gen.gen(gen.ri(1, 3), false, false);
      if (!e) e = expr_path(3);
      add(emit_expr(e), gen.ri(2, 6), true);
    }
  }
  if (!known)
    fail(ErrorKind::InvalidInput,
         "unknown suite family '" + family +
             "' (expected fans, pure, fp, composites, chains, random, or all)");
  return out;
}

int cmd_suite(const SuiteOptions& sopt, const CommandOptions& opt, std::ostream& out) {
  Cache cache = opt.cache_dir.empty() ? Cache::from_env() : Cache(opt.cache_dir);
  std::vector<SuiteCase> cases = suite_cases(sopt.family, sopt.random_count, sopt.seed);
  std::mt19937_64 audit_rng(sopt.seed ^ 0x9E3779B97F4A7C15ULL);

  std::vector<VerdictReport> reps;
  reps.reserve(cases.size());
  int violations = 0;
  auto verdict_code = [](Verdict v) {
    switch (v) {
      case Verdict::ExactMatch: return 'e';
      case Verdict::WithinInterval: return 'w';
      case Verdict::Violation: return 'V';
      case Verdict::OracleUnavailable: return '-';
    }
    return '?';
  };
  for (const SuiteCase& c : cases) {
    CommandOptions o = opt;
    o.m = c.m;
    if (c.formula_only) o.formula_only = true;
    bool audit = std::uniform_real_distribution<double>(0.0, 1.0)(audit_rng) < 0.05;
    VerdictReport r = run_verify(c.expr, o, &cache, audit);
    if (r.any_violation()) ++violations;
    out << (r.any_violation() ? "[FAIL] " : "[ ok ] ") << c.expr << "  m=" << c.m << " ";
    for (const auto& row : r.rows) out << ' ' << row.invariant << ':' << verdict_code(row.verdict);
    if (r.contradiction) out << "  CONTRADICTION";
    out << "\n";
    reps.push_back(std::move(r));
  }
  if (!sopt.csv_path.empty()) {
    std::ofstream f(sopt.csv_path);
    if (!f) fail(ErrorKind::InvalidInput, "cannot open CSV output file " + sopt.csv_path);
    f << reports_to_csv(reps);
  }
  if (opt.csv) out << reports_to_csv(reps);
  out << cases.size() << " cases, " << violations << " with violations\n";
  if (cache.enabled()) {
    const CacheStats& st = cache.stats();
    out << "cache: " << st.hits << " hits, " << st.misses << " misses, " << st.writes
        << " writes, " << st.audits << " audits\n";
  }
  return violations ? 1 : 0;
}

} // namespace bei
