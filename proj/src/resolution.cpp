#include "bei/resolution.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "bei/error.hpp"

namespace bei {

namespace {

// Term of a free-module element. Keys are kept flattened: the monomial of the
// coordinate multiplied by the flattened lead monomial of the basis element it
// sits over, so divisibility and the induced order reduce to plain ring
// monomial arithmetic at every homological level.
struct ModTerm {
  Mono key;
  uint32_t comp = 0;
  uint32_t c = 1;
};

using ModVec = std::vector<ModTerm>; // strictly descending, no zero coefficients

int modkey_cmp(const RingContext& ctx, const Mono& ka, uint32_t ca, const Mono& kb,
               uint32_t cb) {
  int c = mono_cmp(ctx, ka, kb);
  if (c != 0) return c;
  if (ca != cb) return ca < cb ? 1 : -1;
  return 0;
}

struct ModKey {
  Mono key;
  uint32_t comp = 0;
};

struct ModKeyLess {
  const RingContext* ctx;
  bool operator()(const ModKey& a, const ModKey& b) const {
    return modkey_cmp(*ctx, a.key, a.comp, b.key, b.comp) < 0;
  }
};

using ModAcc = std::map<ModKey, uint32_t, ModKeyLess>;

struct GBElem {
  ModVec elem; // monic basis element of the current level
  ModVec rep;  // its expression over the minimal generators found this level
  uint32_t mask = 0;
  int intdeg = 0;
};

struct Candidate {
  ModVec v;
  int deg = 0;
};

struct PairRec {
  int i = 0;
  int j = 0;
  Mono lcm;
  int deg = 0;
};

struct LevelOutput {
  std::map<int, long> betti_row;          // internal degree -> new minimal generators
  std::vector<Candidate> next_candidates; // harvested syzygies over the new generators
  std::vector<Mono> next_flat;
  std::vector<int> next_shift;
  bool skipped = false;
};

// One homological level: a degree-synchronized module Buchberger run. Pairs of
// a degree are processed before the candidates of that degree, so a candidate
// is tested against a basis that is complete through its degree; a surviving
// remainder is a new minimal generator. Every zero reduction of a pair yields
// a transcript over the minimal generators, and those transcripts generate the
// syzygy module, so they are exactly the input for the next level. No pair is
// ever discarded by a shortcut criterion here: each skipped pair would also
// silence its transcript.
struct LevelState {
  const RingContext& ctx;
  PrimeField F;
  int degree_cap; // absolute internal-degree cap for this level, -1 = none
  long& pairs_left;
  long& terms_left;

  std::vector<GBElem> G;
  std::vector<std::vector<int>> bycomp;
  std::map<int, std::vector<PairRec>> pair_bucket;
  LevelOutput out;

  LevelState(const RingContext& c, int cap, long& pb, long& tb)
      : ctx(c), F{c.characteristic}, degree_cap(cap), pairs_left(pb), terms_left(tb) {}

  void charge_terms(long n) {
    terms_left -= n;
    if (terms_left < 0) fail(ErrorKind::CapExceeded, "resolution term budget exhausted");
  }

  void acc_add(ModAcc& acc, uint32_t scale, const Mono& shift, const ModVec& v) const {
    for (const ModTerm& t : v) {
      ModKey k{mono_mul(t.key, shift), t.comp};
      auto it = acc.find(k);
      if (it == acc.end()) {
        uint32_t c = F.mul(scale, t.c);
        if (c != 0) acc.emplace(k, c);
      } else {
        it->second = F.add(it->second, F.mul(scale, t.c));
        if (it->second == 0) acc.erase(it);
      }
    }
  }

  static ModVec acc_to_vec(const ModAcc& acc) {
    ModVec v;
    v.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      v.push_back({it->first.key, it->first.comp, it->second});
    return v;
  }

  int find_reducer(const Mono& key, uint32_t comp, uint32_t mask) const {
    for (int gi : bycomp[comp]) {
      const GBElem& g = G[gi];
      if ((g.mask & ~mask) != 0) continue;
      if (mono_divides(g.elem.front().key, key)) return gi;
    }
    return -1;
  }

  // Full normal form. When rep is non-null the same multiples are subtracted
  // from it, so the caller's representation identity is preserved.
  ModVec reduce_full(ModAcc& acc, ModAcc* rep) const {
    ModVec rem;
    while (!acc.empty()) {
      auto top = std::prev(acc.end());
      Mono key = top->first.key;
      uint32_t comp = top->first.comp;
      uint32_t c = top->second;
      int gi = find_reducer(key, comp, mono_mask(key));
      if (gi < 0) {
        rem.push_back({key, comp, c});
        acc.erase(top);
        continue;
      }
      Mono u = mono_div(key, G[gi].elem.front().key);
      uint32_t s = F.neg(c);
      acc_add(acc, s, u, G[gi].elem);
      if (rep != nullptr) acc_add(*rep, s, u, G[gi].rep);
    }
    return rem;
  }

  void push_pairs_for(int idx) {
    const GBElem& g = G[idx];
    uint32_t comp = g.elem.front().comp;
    for (int other : bycomp[comp]) {
      const GBElem& h = G[other];
      Mono l = mono_lcm(g.elem.front().key, h.elem.front().key);
      int deg = static_cast<int>(l.deg) - static_cast<int>(g.elem.front().key.deg) + g.intdeg;
      if (degree_cap >= 0 && deg > degree_cap) {
        out.skipped = true;
        continue;
      }
      pair_bucket[deg].push_back({other, idx, l, deg});
    }
  }

  // elem must arrive monic and fully reduced, with rep its expression over the
  // minimal generators found so far.
  void add_basis_element(ModVec elem, ModVec rep, int deg) {
    charge_terms(static_cast<long>(elem.size() + rep.size()));
    int idx = static_cast<int>(G.size());
    uint32_t comp = elem.front().comp;
    uint32_t mask = mono_mask(elem.front().key);
    G.push_back({std::move(elem), std::move(rep), mask, deg});
    push_pairs_for(idx);
    bycomp[comp].push_back(idx);
  }

  void make_monic(ModVec& v) const {
    uint32_t lc = v.front().c;
    if (lc == 1) return;
    uint32_t iv = F.inv(lc);
    for (ModTerm& t : v) t.c = F.mul(t.c, iv);
  }

  void process_pair(const PairRec& pr) {
    if (--pairs_left < 0) fail(ErrorKind::CapExceeded, "resolution pair budget exhausted");
    const Mono lead_i = G[pr.i].elem.front().key;
    const Mono lead_j = G[pr.j].elem.front().key;
    Mono ui = mono_div(pr.lcm, lead_i);
    Mono uj = mono_div(pr.lcm, lead_j);
    ModKeyLess less{&ctx};
    ModAcc acc(less), rep(less);
    acc_add(acc, 1, ui, G[pr.i].elem);
    acc_add(acc, F.neg(1), uj, G[pr.j].elem);
    acc_add(rep, 1, ui, G[pr.i].rep);
    acc_add(rep, F.neg(1), uj, G[pr.j].rep);
    ModVec rem = reduce_full(acc, &rep);
    if (rem.empty()) {
      ModVec t = acc_to_vec(rep);
      if (!t.empty()) {
        charge_terms(static_cast<long>(t.size()));
        out.next_candidates.push_back({std::move(t), pr.deg});
      }
      return;
    }
    ModVec r = acc_to_vec(rep);
    uint32_t lc = rem.front().c;
    if (lc != 1) {
      uint32_t iv = F.inv(lc);
      for (ModTerm& t : rem) t.c = F.mul(t.c, iv);
      for (ModTerm& t : r) t.c = F.mul(t.c, iv);
    }
    add_basis_element(std::move(rem), std::move(r), pr.deg);
  }

  void process_candidate(Candidate cand) {
    ModKeyLess less{&ctx};
    ModAcc acc(less);
    for (const ModTerm& t : cand.v) acc.emplace(ModKey{t.key, t.comp}, t.c);
    ModVec rem = reduce_full(acc, nullptr);
    if (rem.empty()) return; // consequence of earlier generators, not minimal
    make_monic(rem);
    auto s = static_cast<uint32_t>(out.next_flat.size());
    out.next_flat.push_back(rem.front().key);
    out.next_shift.push_back(cand.deg);
    out.betti_row[cand.deg] += 1;
    ModVec rep{ModTerm{rem.front().key, s, 1}};
    add_basis_element(std::move(rem), std::move(rep), cand.deg);
  }

  LevelOutput run(std::vector<Candidate> cands, const std::vector<Mono>& flat,
                  const std::vector<int>& shift) {
    bycomp.assign(flat.size(), {});
    std::map<int, std::vector<Candidate>> cand_bucket;
    for (Candidate& c : cands) {
      uint32_t comp = c.v.front().comp;
      if (comp >= flat.size()) fail(ErrorKind::Internal, "syzygy input over unknown component");
      int d = static_cast<int>(c.v.front().key.deg) - static_cast<int>(flat[comp].deg) +
              shift[comp];
      if (d != c.deg) fail(ErrorKind::Internal, "inconsistent grading in syzygy input");
      if (degree_cap >= 0 && c.deg > degree_cap) {
        out.skipped = true;
        continue;
      }
      cand_bucket[c.deg].push_back(std::move(c));
    }
    while (!cand_bucket.empty() || !pair_bucket.empty()) {
      int d = std::numeric_limits<int>::max();
      if (!pair_bucket.empty()) d = pair_bucket.begin()->first;
      if (!cand_bucket.empty()) d = std::min(d, cand_bucket.begin()->first);
      if (auto it = pair_bucket.find(d); it != pair_bucket.end()) {
        // New pairs always land in strictly higher degrees, so this batch is
        // fixed once extracted.
        std::vector<PairRec> batch = std::move(it->second);
        pair_bucket.erase(it);
        for (const PairRec& p : batch) process_pair(p);
      }
      if (auto it = cand_bucket.find(d); it != cand_bucket.end()) {
        std::vector<Candidate> batch = std::move(it->second);
        cand_bucket.erase(it);
        for (Candidate& c : batch) process_candidate(std::move(c));
      }
    }
    return std::move(out);
  }
};

} // namespace

int BettiTable::pd() const {
  int p = 0;
  for (const auto& [k, v] : entries)
    if (v != 0) p = std::max(p, k.first);
  return p;
}

int BettiTable::reg() const {
  int r = 0;
  for (const auto& [k, v] : entries)
    if (v != 0) r = std::max(r, k.second - k.first);
  return r;
}

int BettiTable::depth() const { return nvars - pd(); }

long BettiTable::rank(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? 0 : it->second;
}

std::vector<long long> BettiTable::euler_numerator() const {
  int maxdeg = 0;
  for (const auto& [k, v] : entries) maxdeg = std::max(maxdeg, k.second);
  std::vector<long long> num(static_cast<size_t>(maxdeg) + 1, 0);
  for (const auto& [k, v] : entries) num[k.second] += (k.first % 2 == 0 ? v : -v);
  while (!num.empty() && num.back() == 0) num.pop_back();
  return num;
}

std::string BettiTable::grid() const {
  int p = pd();
  int r = reg();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head(static_cast<size_t>(p) + 2);
  head[0] = "";
  for (int i = 0; i <= p; ++i) head[i + 1] = std::to_string(i);
  cells.push_back(head);
  for (int s = 0; s <= r; ++s) {
    std::vector<std::string> row(static_cast<size_t>(p) + 2);
    row[0] = std::to_string(s) + ":";
    for (int i = 0; i <= p; ++i) {
      long v = rank(i, i + s);
      row[i + 1] = (v == 0) ? "." : std::to_string(v);
    }
    cells.push_back(row);
  }
  std::vector<size_t> width(static_cast<size_t>(p) + 2, 0);
  for (const auto& row : cells)
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << ' ';
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << '\n';
  }
  return os.str();
}

BettiTable minimal_graded_resolution(const RingContext& ctx, const std::vector<Poly>& gens,
                                     const ResOptions& opts) {
  if (ctx.nvars > opts.var_cap)
    fail(ErrorKind::CapExceeded, "resolution variable cap exceeded: " +
                                     std::to_string(ctx.nvars) + " variables, cap " +
                                     std::to_string(opts.var_cap));
  std::vector<Poly> input;
  for (const Poly& f : gens) {
    if (f.zero()) continue;
    if (!poly_homogeneous(f))
      fail(ErrorKind::InvalidInput, "resolution requires homogeneous generators");
    input.push_back(f);
  }
  BettiTable base;
  base.nvars = ctx.nvars;
  base.entries[{0, 0}] = 1;
  if (input.empty()) return base;

  // Independent consistency witness: the alternating sum of the Betti table
  // must reproduce the Hilbert series numerator of the initial ideal, which is
  // computed from its own untruncated basis run.
  GBOptions gbopts;
  gbopts.pair_budget = opts.pair_budget;
  std::vector<long long> expected =
      hilbert_numerator(initial_ideal(groebner_basis(ctx, input, gbopts)), ctx.nvars);

  auto run_tower = [&](int slant_cap, BettiTable& table) {
    table = base;
    table.slant_cap = slant_cap;
    bool skipped = false;
    long pairs_left = opts.pair_budget;
    long terms_left = opts.term_budget;
    std::vector<Mono> flat{mono_one()};
    std::vector<int> shift{0};
    std::vector<Candidate> cands;
    cands.reserve(input.size());
    for (const Poly& f : input) {
      ModVec v;
      v.reserve(f.terms.size());
      for (const Term& t : f.terms) v.push_back({t.m, 0, t.c});
      cands.push_back({std::move(v), static_cast<int>(f.terms.front().m.deg)});
    }
    int level = 1;
    while (!cands.empty()) {
      if (level > ctx.nvars + 1) fail(ErrorKind::Internal, "resolution exceeded length bound");
      int cap = slant_cap < 0 ? -1 : level + 1 + slant_cap;
      LevelState st(ctx, cap, pairs_left, terms_left);
      LevelOutput outp = st.run(std::move(cands), flat, shift);
      skipped = skipped || outp.skipped;
      for (const auto& [d, n] : outp.betti_row) table.entries[{level, d}] = n;
      cands = std::move(outp.next_candidates);
      flat = std::move(outp.next_flat);
      shift = std::move(outp.next_shift);
      ++level;
    }
    table.truncated = skipped;
  };

  int cap = -1;
  if (opts.reg_bound.has_value()) cap = std::max(0, *opts.reg_bound) + 2;
  for (int attempt = 0; attempt < 3 && cap >= 0; ++attempt) {
    BettiTable t;
    run_tower(cap, t);
    if (!t.truncated) {
      if (t.euler_numerator() != expected)
        fail(ErrorKind::Internal, "resolution disagrees with the Hilbert series");
      return t;
    }
    // A minimal generator observed at the cap boundary, or a Hilbert residual,
    // means the supplied bound was too small: widen and rerun.
    if (t.reg() >= cap - 1 || t.euler_numerator() != expected) {
      cap = std::max(cap + 1, t.reg() + 2);
      continue;
    }
    return t;
  }
  BettiTable t;
  run_tower(-1, t);
  if (t.euler_numerator() != expected)
    fail(ErrorKind::Internal, "resolution disagrees with the Hilbert series");
  return t;
}

ResolutionInvariants invariants_from_betti(const BettiTable& t, std::optional<long> dim) {
  ResolutionInvariants inv{};
  inv.pd = t.pd();
  inv.depth = t.nvars - inv.pd;
  inv.reg = t.reg();
  if (dim.has_value()) inv.cm = (static_cast<long>(inv.depth) == *dim);
  return inv;
}

} // namespace bei
