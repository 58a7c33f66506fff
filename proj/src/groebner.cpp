#include "bei/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bei/error.hpp"

namespace bei {

namespace {

struct MonoLess {
  const RingContext* ctx;
  bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(*ctx, a, b) < 0; }
};

// Working polynomial with cheap access to the current largest term.
using Accumulator = std::map<Mono, uint32_t, MonoLess>;

Accumulator make_acc(const RingContext& ctx) { return Accumulator(MonoLess{&ctx}); }

void acc_add_poly(const RingContext& ctx, Accumulator& acc, const Poly& f, uint32_t scale,
                  const Mono& shift) {
  PrimeField F{ctx.characteristic};
  for (const auto& t : f.terms) {
    Mono key = mono_mul(t.m, shift);
    uint32_t val = F.mul(t.c, scale);
    auto it = acc.find(key);
    if (it == acc.end()) {
      if (val) acc.emplace(key, val);
    } else {
      it->second = F.add(it->second, val);
      if (it->second == 0) acc.erase(it);
    }
  }
}

struct BasisEntry {
  Poly poly; // monic
  Mono lead;
  uint32_t mask;
  bool redundant = false; // lead divisible by a newer lead; kept as reducer
};

const BasisEntry* find_reducer(const std::vector<BasisEntry>& basis, const Mono& m,
                               uint32_t mask) {
  for (const auto& b : basis) {
    if ((b.mask & ~mask) != 0) continue;
    if (mono_divides(b.lead, m)) return &b;
  }
  return nullptr;
}

Poly reduce_acc(const RingContext& ctx, Accumulator& acc,
                const std::vector<BasisEntry>& basis) {
  PrimeField F{ctx.characteristic};
  Poly out;
  while (!acc.empty()) {
    auto it = std::prev(acc.end());
    Mono m = it->first;
    uint32_t c = it->second;
    const BasisEntry* red = find_reducer(basis, m, mono_mask(m));
    if (!red) {
      out.terms.push_back({m, c});
      acc.erase(it);
      continue;
    }
    acc.erase(it);
    Mono shift = mono_div(m, red->lead);
    // basis entries are monic: subtract c * shift * tail
    uint32_t neg = F.neg(c);
    Poly tail;
    tail.terms.assign(red->poly.terms.begin() + 1, red->poly.terms.end());
    acc_add_poly(ctx, acc, tail, neg, shift);
  }
  return out;
}

struct Pair {
  int i, j;
  Mono lcm;
};

struct PairQueueLess {
  const RingContext* ctx;
  bool operator()(const Pair& a, const Pair& b) const {
    int c = mono_cmp(*ctx, a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

} // namespace

static std::vector<Poly> buchberger(const RingContext& ctx, const std::vector<Poly>& gens,
                                    const GBOptions& opts) {
  std::vector<BasisEntry> basis;
  PairQueueLess less{&ctx};
  std::set<Pair, PairQueueLess> pairs(less);

  auto add_element = [&](const Poly& monic) {
    int s = static_cast<int>(basis.size());
    BasisEntry entry{monic, monic.lead().m, mono_mask(monic.lead().m), false};

    // Gebauer-Moeller update of the pending pair set.
    std::vector<Pair> fresh;
    for (int i = 0; i < s; ++i)
      fresh.push_back({i, s, mono_lcm(basis[i].lead, entry.lead)});

    // Drop new pairs strictly dominated by another new pair.
    std::vector<bool> keep(fresh.size(), true);
    for (size_t a = 0; a < fresh.size(); ++a) {
      if (!keep[a]) continue;
      for (size_t b = 0; b < fresh.size(); ++b) {
        if (a == b || !keep[a]) continue;
        if (!keep[b]) continue;
        if (!(fresh[b].lcm == fresh[a].lcm) && mono_divides(fresh[b].lcm, fresh[a].lcm))
          keep[a] = false;
      }
    }
    // Among equal lcms keep a single pair, preferring one the product
    // criterion eliminates outright.
    for (size_t a = 0; a < fresh.size(); ++a) {
      if (!keep[a]) continue;
      bool group_has_coprime =
          mono_coprime(basis[fresh[a].i].lead, entry.lead);
      size_t chosen = a;
      for (size_t b = a + 1; b < fresh.size(); ++b) {
        if (!keep[b] || !(fresh[b].lcm == fresh[a].lcm)) continue;
        keep[b] = false;
        if (!group_has_coprime && mono_coprime(basis[fresh[b].i].lead, entry.lead)) {
          group_has_coprime = true;
          chosen = b;
          keep[a] = false;
          keep[chosen] = true;
        }
      }
      (void)chosen;
    }
    // Product criterion.
    for (size_t a = 0; a < fresh.size(); ++a)
      if (keep[a] && mono_coprime(basis[fresh[a].i].lead, entry.lead)) keep[a] = false;

    // Chain criterion on old pairs.
    for (auto it = pairs.begin(); it != pairs.end();) {
      const Mono& tij = it->lcm;
      bool drop = mono_divides(entry.lead, tij) &&
                  !(mono_lcm(basis[it->i].lead, entry.lead) == tij) &&
                  !(mono_lcm(basis[it->j].lead, entry.lead) == tij);
      it = drop ? pairs.erase(it) : std::next(it);
    }
    for (size_t a = 0; a < fresh.size(); ++a)
      if (keep[a]) pairs.insert(fresh[a]);

    for (auto& b : basis)
      if (!b.redundant && mono_divides(entry.lead, b.lead)) b.redundant = true;
    basis.push_back(std::move(entry));
    if (static_cast<long>(basis.size()) > opts.basis_budget)
      fail(ErrorKind::CapExceeded, "resource-cap-exceeded: basis budget in buchberger");
  };

  for (const auto& g : gens) {
    if (g.zero()) continue;
    Accumulator acc = make_acc(ctx);
    acc_add_poly(ctx, acc, g, 1, mono_one());
    Poly rem = reduce_acc(ctx, acc, basis);
    if (!rem.zero()) add_element(poly_monic(ctx, rem));
  }

  long processed = 0;
  while (!pairs.empty()) {
    Pair p = *pairs.begin();
    pairs.erase(pairs.begin());
    if (++processed > opts.pair_budget)
      fail(ErrorKind::CapExceeded, "resource-cap-exceeded: pair budget in buchberger");
    const Poly& fi = basis[p.i].poly;
    const Poly& fj = basis[p.j].poly;
    Mono ui = mono_div(p.lcm, fi.lead().m);
    Mono uj = mono_div(p.lcm, fj.lead().m);
    Accumulator acc = make_acc(ctx);
    acc_add_poly(ctx, acc, fi, 1, ui);
    acc_add_poly(ctx, acc, fj, ctx.characteristic - 1, uj);
    Poly rem = reduce_acc(ctx, acc, basis);
    if (!rem.zero()) add_element(poly_monic(ctx, rem));
  }

  std::vector<Poly> out;
  for (const auto& b : basis)
    if (!b.redundant) out.push_back(b.poly);
  return out;
}

std::vector<Poly> groebner_basis(const RingContext& ctx, const std::vector<Poly>& gens,
                                 const GBOptions& opts) {
  std::vector<Poly> gb = buchberger(ctx, gens, opts);

  // Minimalize: keep leads that no other kept lead divides.
  std::vector<Poly> minimal;
  for (size_t i = 0; i < gb.size(); ++i) {
    bool drop = false;
    for (size_t j = 0; j < gb.size() && !drop; ++j) {
      if (i == j) continue;
      if (mono_divides(gb[j].lead().m, gb[i].lead().m)) {
        // On ties (equal leads) keep the earlier element.
        if (gb[i].lead().m == gb[j].lead().m)
          drop = j < i;
        else
          drop = true;
      }
    }
    if (!drop) minimal.push_back(gb[i]);
  }

  // Tail-reduce every element against the others.
  std::vector<Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(poly_monic(ctx, normal_form(ctx, minimal[i], others)));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return mono_cmp(ctx, a.lead().m, b.lead().m) > 0;
  });
  return reduced;
}

Poly normal_form(const RingContext& ctx, const Poly& f, const std::vector<Poly>& basis) {
  std::vector<BasisEntry> entries;
  for (const auto& b : basis) {
    if (b.zero()) continue;
    entries.push_back({poly_monic(ctx, b), b.lead().m, mono_mask(b.lead().m), false});
  }
  Accumulator acc = make_acc(ctx);
  acc_add_poly(ctx, acc, f, 1, mono_one());
  return reduce_acc(ctx, acc, entries);
}

std::vector<Mono> initial_ideal(const std::vector<Poly>& reduced_basis) {
  std::vector<Mono> leads;
  for (const auto& f : reduced_basis)
    if (!f.zero()) leads.push_back(f.lead().m);
  return leads;
}

namespace {

struct HittingState {
  std::vector<uint32_t> supports;
  int best;
};

void hitting_rec(HittingState& st, std::vector<uint32_t> remaining, int used) {
  if (used >= st.best) return;
  if (remaining.empty()) {
    st.best = used;
    return;
  }
  // Branch on the generator with the smallest support.
  size_t pick = 0;
  int pick_bits = 64;
  for (size_t i = 0; i < remaining.size(); ++i) {
    int bits = __builtin_popcount(remaining[i]);
    if (bits < pick_bits) {
      pick_bits = bits;
      pick = i;
    }
  }
  uint32_t support = remaining[pick];
  for (int v = 0; v < kMaxVars; ++v) {
    if (!(support & (1u << v))) continue;
    std::vector<uint32_t> next;
    for (uint32_t s : remaining)
      if (!(s & (1u << v))) next.push_back(s);
    hitting_rec(st, std::move(next), used + 1);
  }
}

} // namespace

int monomial_dim(int nvars, const std::vector<Mono>& gens) {
  std::vector<uint32_t> supports;
  for (const auto& g : gens) {
    if (g.deg == 0) return -1; // unit ideal: S/I = 0
    supports.push_back(mono_mask(g));
  }
  std::sort(supports.begin(), supports.end());
  supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
  // A support containing another is hit whenever the smaller one is.
  std::vector<uint32_t> essential;
  for (uint32_t s : supports) {
    bool dominated = false;
    for (uint32_t t : supports)
      if (t != s && (t & ~s) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) essential.push_back(s);
  }
  HittingState st{essential, nvars + 1};
  hitting_rec(st, essential, 0);
  return nvars - st.best;
}

bool ideal_contains(const RingContext& ctx, const std::vector<Poly>& reduced_basis,
                    const Poly& f) {
  return normal_form(ctx, f, reduced_basis).zero();
}

bool ideal_equal(const RingContext& ctx, const std::vector<Poly>& a,
                 const std::vector<Poly>& b, const GBOptions& opts) {
  std::vector<Poly> ga = groebner_basis(ctx, a, opts);
  std::vector<Poly> gb = groebner_basis(ctx, b, opts);
  if (ga.size() != gb.size()) return false;
  for (size_t i = 0; i < ga.size(); ++i)
    if (!poly_equal(ga[i], gb[i])) return false;
  return true;
}

std::vector<Poly> ideal_intersection(const RingContext& base, const std::vector<Poly>& a,
                                     const std::vector<Poly>& b, const GBOptions& opts) {
  RingContext ext = extend_with_aux(base);
  int t_idx = ext.nvars - 1;
  Mono t = mono_var(t_idx);
  std::vector<Poly> gens;
  for (const auto& f : a) gens.push_back(poly_from_terms(ext, [&] {
                            std::vector<Term> ts;
                            for (const auto& tm : f.terms) ts.push_back({mono_mul(tm.m, t), tm.c});
                            return ts;
                          }()));
  for (const auto& g : b) {
    std::vector<Term> ts;
    for (const auto& tm : g.terms) {
      ts.push_back({tm.m, tm.c});                                  // g
      ts.push_back({mono_mul(tm.m, t), ext.characteristic - tm.c}); // -t*g
    }
    gens.push_back(poly_from_terms(ext, ts));
  }
  std::vector<Poly> gb = groebner_basis(ext, gens, opts);
  std::vector<Poly> kept;
  for (const auto& f : gb) {
    bool has_t = false;
    for (const auto& tm : f.terms)
      if (tm.m.e[t_idx]) {
        has_t = true;
        break;
      }
    if (!has_t) kept.push_back(f);
  }
  // Re-express in the base ring and normalize to the base reduced form.
  std::vector<Poly> base_polys;
  for (const auto& f : kept) {
    std::vector<Term> ts(f.terms.begin(), f.terms.end());
    base_polys.push_back(poly_from_terms(base, ts));
  }
  return groebner_basis(base, base_polys, opts);
}

int oracle_dim(const RingContext& ctx, const std::vector<Poly>& gens, const GBOptions& opts) {
  if (ctx.nvars > opts.var_cap)
    fail(ErrorKind::CapExceeded, "resource-cap-exceeded: " + std::to_string(ctx.nvars) +
                                     " variables exceed the dimension oracle cap of " +
                                     std::to_string(opts.var_cap));
  std::vector<Poly> gb = groebner_basis(ctx, gens, opts);
  return monomial_dim(ctx.nvars, initial_ideal(gb));
}

} // namespace bei
