#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "json.hpp"

#include "bei/commands.hpp"
#include "bei/error.hpp"
#include "bei/parser.hpp"

using namespace bei;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("bei-tests-" + tag);
  fs::remove_all(p);
  return p;
}

} // namespace

TEST_CASE("verdicts compare predictions against ground truth") {
  CHECK(judge({5, 5}, 5) == Verdict::ExactMatch);
  CHECK(judge({5, 5}, 6) == Verdict::Violation);
  CHECK(judge({3, 7}, 5) == Verdict::WithinInterval);
  CHECK(judge({3, 7}, 8) == Verdict::Violation);
  CHECK(judge({3, kNoBound}, 100) == Verdict::WithinInterval);
  CHECK(judge({3, kNoBound}, 2) == Verdict::Violation);
  CHECK(judge({3, 7}, std::nullopt) == Verdict::OracleUnavailable);
  CHECK(std::string(verdict_name(Verdict::Violation)) == "VIOLATION");
  CHECK(std::string(verdict_name(Verdict::ExactMatch)) == "exact-match");
}

TEST_CASE("boolean flags become unit intervals") {
  CHECK_FALSE(flag_interval(std::nullopt).bounded());
  InvariantValue no = flag_interval(false);
  CHECK(no.exact());
  CHECK(no.lo == 0);
  InvariantValue yes = flag_interval(true);
  CHECK(yes.exact());
  CHECK(yes.lo == 1);
}

TEST_CASE("json report structure") {
  VerdictReport r;
  r.expr = "Fp(2)";
  r.graph = "graph";
  r.m = 2;
  r.characteristic = 32003;
  for (const char* name : {"dim", "depth", "reg", "cm", "unmixed"}) {
    InvariantReport row;
    row.invariant = name;
    row.predicted = {3, 5};
    row.oracle = 4;
    row.verdict = judge(row.predicted, row.oracle);
    r.rows.push_back(row);
  }
  r.fired.push_back({"some-rule", "detail"});
  nlohmann::json j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["schema"] == 1);
  CHECK(j["kernel"]["name"] == "bei");
  CHECK(j["expr"] == "Fp(2)");
  CHECK(j["contradiction"] == false);
  REQUIRE(j["invariants"].size() == 5);
  CHECK(j["invariants"][0]["name"] == "dim");
  CHECK(j["invariants"][0]["predicted"]["lo"] == 3);
  CHECK(j["invariants"][0]["verdict"] == "within-interval");
  CHECK(j["rules"][0]["rule"] == "some-rule");
}

TEST_CASE("csv rows quote whatever needs quoting") {
  VerdictReport r;
  r.expr = "circ(Fp(3), Fp(2))";
  r.m = 2;
  r.characteristic = 32003;
  InvariantReport row;
  row.invariant = "dim";
  row.predicted = {8, 8};
  row.oracle = 8;
  row.verdict = judge(row.predicted, row.oracle);
  r.rows.push_back(row);
  std::string csv = reports_to_csv({r});
  CHECK(csv.find(kCsvHeader) == 0);
  CHECK(csv.find("\"circ(Fp(3), Fp(2))\"") != std::string::npos);
  CHECK(csv.find("exact-match") != std::string::npos);
}

TEST_CASE("hash and cache") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(oracle_cache_key("dim", "G", 2, 32003, "degrevlex") == "dim|G|2|32003|degrevlex");

  Cache off;
  CHECK_FALSE(off.enabled());
  CHECK_FALSE(off.get("anything").has_value());

  fs::path dir = fresh_dir("cache");
  {
    Cache c(dir.string());
    REQUIRE(c.enabled());
    CHECK_FALSE(c.get("k1").has_value());
    c.put("k1", "v1");
    auto got = c.get("k1");
    REQUIRE(got.has_value());
    CHECK(*got == "v1");
    CHECK_FALSE(c.get("k2").has_value());
    CHECK(c.stats().hits == 1);
    CHECK(c.stats().misses == 2);
    CHECK(c.stats().writes == 1);
  }
  {
    Cache again(dir.string());
    auto got = again.get("k1");
    REQUIRE(got.has_value());
    CHECK(*got == "v1");
  }
  fs::remove_all(dir);
}

TEST_CASE("oracle computes the small block exactly") {
  Realization r = realize(parse_expr("Fp(1)"));
  CommandOptions opt;
  OracleResult res = compute_oracle(r.graph, 2, opt, std::nullopt, nullptr);
  REQUIRE(res.dim.has_value());
  CHECK(*res.dim == 3);
  REQUIRE(res.depth.has_value());
  CHECK(*res.depth == 3);
  REQUIRE(res.reg.has_value());
  CHECK(*res.reg == 1);
  CHECK(res.cm == true);
  CHECK(res.unmixed == true);
}

TEST_CASE("oracle cache hits are audited") {
  Realization r = realize(parse_expr("Fp(1)"));
  CommandOptions opt;
  fs::path dir = fresh_dir("audit");
  Cache c(dir.string());
  OracleResult first = compute_oracle(r.graph, 2, opt, std::nullopt, &c);
  OracleResult second = compute_oracle(r.graph, 2, opt, std::nullopt, &c, true);
  CHECK(*first.dim == *second.dim);
  CHECK(c.stats().hits >= 1);
  CHECK(c.stats().audits >= 1);
  fs::remove_all(dir);
}

TEST_CASE("verification agrees with itself on a block") {
  CommandOptions opt;
  VerdictReport rep = run_verify("Fp(2)", opt, nullptr);
  CHECK_FALSE(rep.any_violation());
  REQUIRE(rep.rows.size() == 5);
  for (const InvariantReport& row : rep.rows) CHECK(row.verdict == Verdict::ExactMatch);

  CommandOptions fo;
  fo.formula_only = true;
  VerdictReport dry = run_verify("Fp(2)", fo, nullptr);
  for (const InvariantReport& row : dry.rows)
    CHECK(row.verdict == Verdict::OracleUnavailable);
}

TEST_CASE("suite case lists are deterministic") {
  CHECK(suite_cases("fans", 0, kDefaultSeed).size() == 54);
  CHECK(suite_cases("pure", 0, kDefaultSeed).size() == 9);
  CHECK(suite_cases("fp", 0, kDefaultSeed).size() == 6);
  CHECK(suite_cases("composites", 0, kDefaultSeed).size() == 20);
  CHECK(suite_cases("chains", 0, kDefaultSeed).size() == 2);

  std::vector<SuiteCase> a = suite_cases("random", 25, 7);
  std::vector<SuiteCase> b = suite_cases("random", 25, 7);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].expr == b[i].expr);
    CHECK(a[i].m == b[i].m);
    CHECK(a[i].formula_only);
  }
  for (const SuiteCase& c : a) {
    ExprPtr e = parse_expr(c.expr);
    Realization r = realize(e);
    CHECK(r.graph.num_vertices() <= 20);
    CHECK(c.m >= 2);
    CHECK(c.m <= 6);
  }
  CHECK_THROWS_AS(suite_cases("nope", 0, kDefaultSeed), BeiError);
}

TEST_CASE("command entry points") {
  CommandOptions opt;
  std::ostringstream out;
  CHECK(cmd_predict("path(4)", opt, out) == 0);
  CHECK(out.str().find("\"schema\": 1") != std::string::npos);

  std::ostringstream vout;
  CHECK(cmd_verify("Fp(1)", opt, vout) == 0);
  CHECK(vout.str().find("exact-match") != std::string::npos);

  CommandOptions dopt;
  dopt.check_ideal = true;
  std::ostringstream dout;
  CHECK(cmd_decompose("path(4)", dopt, dout) == 0);
  CHECK(dout.str().find("equal") != std::string::npos);

  SuiteOptions sopt;
  sopt.family = "chains";
  CommandOptions fast;
  fast.formula_only = true;
  std::ostringstream sout;
  CHECK(cmd_suite(sopt, fast, sout) == 0);
  CHECK(sout.str().find("2 cases") != std::string::npos);
}
