#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bei/groebner.hpp"
#include "bei/ring.hpp"

namespace bei {

// Graded Betti numbers of S/I, including the implicit beta_{0,0} = 1.
struct BettiTable {
  std::map<std::pair<int, int>, long> entries; // (level i, internal degree j) -> rank
  int nvars = 0;
  bool truncated = false; // a degree cap skipped work during the run
  int slant_cap = -1;     // cap on j - i in effect, -1 when none

  int pd() const;
  int reg() const;
  int depth() const;
  long rank(int i, int j) const;
  std::vector<long long> euler_numerator() const; // sum_i (-1)^i beta_{i,j} t^j
  std::string grid() const;
};

struct ResOptions {
  std::optional<int> reg_bound; // proven upper bound for reg(S/I)
  int var_cap = 18;
  long pair_budget = 6000000;
  long term_budget = 60000000;
};

struct ResolutionInvariants {
  int pd;
  int depth;
  int reg;
  std::optional<bool> cm;
};

// Betti table of S/I for homogeneous I, by iterated minimal syzygy
// computation. When a regularity bound is supplied the run is degree-truncated
// to bound+2 and validated: a clean run (nothing skipped) is exact
// unconditionally, and every returned table must reproduce the Hilbert series
// of in(I).
BettiTable minimal_graded_resolution(const RingContext& ctx, const std::vector<Poly>& gens,
                                     const ResOptions& opts = {});

ResolutionInvariants invariants_from_betti(const BettiTable& t, std::optional<long> dim);

} // namespace bei
