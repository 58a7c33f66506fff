#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bei/cache.hpp"
#include "bei/report.hpp"

namespace bei {

inline constexpr unsigned long kDefaultSeed = 20260815UL;
inline constexpr long kSecondPrime = 32749;

struct CommandOptions {
  int m = 2;
  long characteristic = 32003;
  long gb_cap = 24;    // max variable count for basis-driven oracles
  long res_cap = 18;   // max variable count for resolution oracles
  int cutset_cap = 20; // max vertex count for separator-family scans
  bool formula_only = false;
  bool check_ideal = false; // decompose: verify the prime intersection
  bool csv = false;         // verify/suite: CSV rows instead of JSON
  std::string cache_dir;    // empty -> BEI_CACHE
};

struct SuiteOptions {
  std::string family = "all"; // fans | pure | fp | composites | chains | random | all
  int random_count = 50;
  unsigned long seed = kDefaultSeed;
  std::string csv_path; // also dump all rows to this file
};

struct SuiteCase {
  std::string expr;
  int m = 2;
  bool formula_only = false;
};

// Deterministic case lists shared by the CLI and the test suites.
std::vector<SuiteCase> suite_cases(const std::string& family, int random_count,
                                   unsigned long seed);

struct OracleResult {
  std::optional<long> dim, depth, reg;
  std::optional<bool> cm, unmixed;
  double dim_ms = 0.0;
  double res_ms = 0.0;
  std::string note;
};

// Algebraic ground truth within the caps: dim from a basis of the ideal,
// depth/reg from the minimal resolution, cm from their comparison, unmixed
// from the minimal-prime dimension spectrum. reg_hint only speeds the
// resolution up; it never changes the answer. audit recomputes cache hits and
// verifies them.
OracleResult compute_oracle(const Graph& g, int m, const CommandOptions& opt,
                            std::optional<long> reg_hint, Cache* cache, bool audit = false);

VerdictReport run_verify(const std::string& expr_text, const CommandOptions& opt,
                         Cache* cache, bool audit = false);

int cmd_predict(const std::string& expr_text, const CommandOptions& opt, std::ostream& out);
int cmd_oracle(const std::string& expr_text, const CommandOptions& opt, std::ostream& out);
int cmd_verify(const std::string& expr_text, const CommandOptions& opt, std::ostream& out);
int cmd_decompose(const std::string& expr_text, const CommandOptions& opt, std::ostream& out);
int cmd_suite(const SuiteOptions& sopt, const CommandOptions& opt, std::ostream& out);

} // namespace bei
