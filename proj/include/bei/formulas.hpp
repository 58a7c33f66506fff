#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bei/cutsets.hpp"
#include "bei/families.hpp"
#include "bei/graph.hpp"

namespace bei {

inline constexpr long kNoBound = -1;

// Closed interval of a nonnegative invariant; kNoBound marks a missing side.
struct InvariantValue {
  long lo = kNoBound;
  long hi = kNoBound;

  bool has_lo() const { return lo != kNoBound; }
  bool has_hi() const { return hi != kNoBound; }
  bool exact() const { return has_lo() && lo == hi; }
  bool bounded() const { return has_lo() || has_hi(); }
  bool contains(long v) const {
    if (has_lo() && v < lo) return false;
    if (has_hi() && v > hi) return false;
    return true;
  }
};

struct RuleFire {
  std::string rule;
  std::string detail;
};

// Closed-form invariants of one atom family.
struct FamilyInvariants {
  InvariantValue dim, depth, reg;
  std::optional<bool> cm, unmixed;
  std::vector<RuleFire> fired;
};

FamilyInvariants clique_invariants(int n, int m);
FamilyInvariants path_invariants(int t, int m);
FamilyInvariants fp_invariants(int p, int m);
FamilyInvariants fan_invariants(const FanSpec& spec, int m);

struct Prediction {
  InvariantValue dim, depth, reg;
  std::optional<bool> cm, unmixed;
  std::vector<RuleFire> fired;
  bool contradiction = false;
  std::string contradiction_detail;
  std::optional<long> comb_dim;       // separator-family dimension, when computed
  std::optional<VertexSet> comb_witness;
};

struct PredictOptions {
  int cutset_cap = 20; // vertex cap for the separator-family dimension scan
};

// Best bounds obtainable from the closed-form catalog for the graph of the
// expression over an m-row clique. Rules fire on the expression as written and
// on a normalized rewrite (single edges become paths, paths absorb into their
// neighbors); all results are intersected, and incompatible rules raise the
// contradiction flag instead of throwing.
Prediction predict(const ExprPtr& expr, int m, const PredictOptions& opts = {});

} // namespace bei
