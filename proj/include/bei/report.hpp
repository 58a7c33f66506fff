#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bei/formulas.hpp"

namespace bei {

enum class Verdict { ExactMatch, WithinInterval, Violation, OracleUnavailable };

const char* verdict_name(Verdict v);

// exact prediction vs equal oracle -> exact-match; interval containing the
// oracle -> within-interval; any disagreement -> VIOLATION; no oracle ->
// oracle-unavailable.
Verdict judge(const InvariantValue& predicted, std::optional<long> oracle);

struct InvariantReport {
  std::string invariant; // dim | depth | reg | cm | unmixed
  InvariantValue predicted;
  std::optional<long> oracle;
  Verdict verdict = Verdict::OracleUnavailable;
  double millis = 0.0;
};

struct VerdictReport {
  std::string expr;  // canonical expression text
  std::string graph; // canonical graph text
  int m = 0;
  long characteristic = 0;
  std::vector<InvariantReport> rows;
  std::vector<RuleFire> fired;
  bool contradiction = false;
  std::string contradiction_detail;
  std::optional<long> comb_dim;
  std::string notes;

  bool any_violation() const;
};

// 0 <-> false, 1 <-> true, unset flag <-> unbounded.
InvariantValue flag_interval(const std::optional<bool>& flag);

std::string report_to_json(const VerdictReport& r);

extern const char* const kCsvHeader; // includes trailing newline
std::string report_to_csv_rows(const VerdictReport& r);
std::string reports_to_csv(const std::vector<VerdictReport>& rs);

} // namespace bei
