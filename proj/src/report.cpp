#include "bei/report.hpp"

#include <sstream>

#include "json.hpp"

#include "bei/version.hpp"

namespace bei {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ExactMatch: return "exact-match";
    case Verdict::WithinInterval: return "within-interval";
    case Verdict::Violation: return "VIOLATION";
    case Verdict::OracleUnavailable: return "oracle-unavailable";
  }
  return "?";
}

Verdict judge(const InvariantValue& predicted, std::optional<long> oracle) {
  if (!oracle) return Verdict::OracleUnavailable;
  if (predicted.exact())
    return *oracle == predicted.lo ? Verdict::ExactMatch : Verdict::Violation;
  return predicted.contains(*oracle) ? Verdict::WithinInterval : Verdict::Violation;
}

InvariantValue flag_interval(const std::optional<bool>& flag) {
  if (!flag) return {};
  long v = *flag ? 1 : 0;
  return {v, v};
}

bool VerdictReport::any_violation() const {
  if (contradiction) return true;
  for (const auto& r : rows)
    if (r.verdict == Verdict::Violation) return true;
  return false;
}

namespace {

nlohmann::ordered_json interval_json(const InvariantValue& v) {
  nlohmann::ordered_json j;
  j["lo"] = v.has_lo() ? nlohmann::ordered_json(v.lo) : nlohmann::ordered_json(nullptr);
  j["hi"] = v.has_hi() ? nlohmann::ordered_json(v.hi) : nlohmann::ordered_json(nullptr);
  return j;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string bound_text(long v, bool set) { return set ? std::to_string(v) : ""; }

} // namespace

std::string report_to_json(const VerdictReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["kernel"] = {{"name", kKernelName}, {"version", kKernelVersion}};
  j["expr"] = r.expr;
  j["graph"] = r.graph;
  j["m"] = r.m;
  j["characteristic"] = r.characteristic;
  j["contradiction"] = r.contradiction;
  if (!r.contradiction_detail.empty()) j["contradiction_detail"] = r.contradiction_detail;
  if (r.comb_dim) j["combinatorial_dim"] = *r.comb_dim;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json x;
    x["name"] = row.invariant;
    x["predicted"] = interval_json(row.predicted);
    x["oracle"] =
        row.oracle ? nlohmann::ordered_json(*row.oracle) : nlohmann::ordered_json(nullptr);
    x["verdict"] = verdict_name(row.verdict);
    x["ms"] = row.millis;
    rows.push_back(std::move(x));
  }
  j["invariants"] = std::move(rows);
  auto rules = nlohmann::ordered_json::array();
  for (const auto& f : r.fired)
    rules.push_back(nlohmann::ordered_json{{"rule", f.rule}, {"detail", f.detail}});
  j["rules"] = std::move(rules);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

const char* const kCsvHeader =
    "expr,m,characteristic,invariant,predicted_lo,predicted_hi,oracle,verdict,ms\n";

std::string report_to_csv_rows(const VerdictReport& r) {
  std::ostringstream os;
  for (const auto& row : r.rows) {
    os << csv_quote(r.expr) << ',' << r.m << ',' << r.characteristic << ',' << row.invariant
       << ',' << bound_text(row.predicted.lo, row.predicted.has_lo()) << ','
       << bound_text(row.predicted.hi, row.predicted.has_hi()) << ','
       << (row.oracle ? std::to_string(*row.oracle) : std::string()) << ','
       << verdict_name(row.verdict) << ',' << row.millis << '\n';
  }
  return os.str();
}

std::string reports_to_csv(const std::vector<VerdictReport>& rs) {
  std::string out = kCsvHeader;
  for (const auto& r : rs) out += report_to_csv_rows(r);
  return out;
}

} // namespace bei
