#include "bei/ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bei/error.hpp"

namespace bei {

const char* order_name(MonoOrder o) {
  switch (o) {
    case MonoOrder::DegRevLex: return "degrevlex";
    case MonoOrder::Lex: return "lex";
    case MonoOrder::ElimLast: return "elim";
  }
  return "unknown";
}

MonoOrder order_from_name(const std::string& name) {
  if (name == "degrevlex") return MonoOrder::DegRevLex;
  if (name == "lex") return MonoOrder::Lex;
  if (name == "elim") return MonoOrder::ElimLast;
  fail(ErrorKind::InvalidInput, "unknown monomial order '" + name + "'");
}

RingContext make_ring(int m, int ncols, uint32_t characteristic, MonoOrder order) {
  if (m < 1 || ncols < 0) fail(ErrorKind::InvalidInput, "ring needs m >= 1");
  RingContext ctx;
  ctx.m = m;
  ctx.ncols = ncols;
  ctx.nvars = m * ncols;
  ctx.characteristic = characteristic;
  ctx.order = order;
  if (ctx.nvars > kMaxVars)
    fail(ErrorKind::CapExceeded, "label-overflow: " + std::to_string(ctx.nvars) +
                                     " variables exceed the internal limit of " +
                                     std::to_string(kMaxVars));
  return ctx;
}

RingContext extend_with_aux(const RingContext& base) {
  RingContext ctx = base;
  ctx.nvars = base.nvars + 1;
  ctx.order = MonoOrder::ElimLast;
  if (ctx.nvars > kMaxVars)
    fail(ErrorKind::CapExceeded, "label-overflow: auxiliary variable exceeds the internal limit");
  return ctx;
}

namespace {

int cmp_degrevlex(const Mono& a, const Mono& b, int lo, int hi, int dega, int degb) {
  if (dega != degb) return dega > degb ? 1 : -1;
  for (int i = hi - 1; i >= lo; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

} // namespace

int mono_cmp(const RingContext& ctx, const Mono& a, const Mono& b) {
  switch (ctx.order) {
    case MonoOrder::DegRevLex:
      return cmp_degrevlex(a, b, 0, ctx.nvars, a.deg, b.deg);
    case MonoOrder::Lex:
      for (int i = 0; i < ctx.nvars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      return 0;
    case MonoOrder::ElimLast: {
      int t = ctx.nvars - 1;
      if (a.e[t] != b.e[t]) return a.e[t] > b.e[t] ? 1 : -1;
      return cmp_degrevlex(a, b, 0, t, a.deg - a.e[t], b.deg - b.e[t]);
    }
  }
  return 0;
}

bool mono_divides(const Mono& a, const Mono& b) {
  if (a.deg > b.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint8_t>(a.e[i] + b.e[i]);
  r.deg = static_cast<uint16_t>(a.deg + b.deg);
  return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint8_t>(a.e[i] - b.e[i]);
  r.deg = static_cast<uint16_t>(a.deg - b.deg);
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r;
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    d += r.e[i];
  }
  r.deg = static_cast<uint16_t>(d);
  return r;
}

bool mono_coprime(const Mono& a, const Mono& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

uint32_t mono_mask(const Mono& a) {
  uint32_t m = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i]) m |= (1u << i);
  return m;
}

Mono mono_one() { return Mono{}; }

Mono mono_var(int idx, int exp) {
  Mono r;
  r.e[idx] = static_cast<uint8_t>(exp);
  r.deg = static_cast<uint16_t>(exp);
  return r;
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a == 0) fail(ErrorKind::Internal, "division by zero in prime field");
  uint64_t base = a, result = 1;
  uint32_t exp = p - 2;
  while (exp) {
    if (exp & 1) result = (result * base) % p;
    base = (base * base) % p;
    exp >>= 1;
  }
  return static_cast<uint32_t>(result);
}

Poly poly_from_terms(const RingContext& ctx, std::vector<Term> terms) {
  PrimeField F{ctx.characteristic};
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return mono_cmp(ctx, a.m, b.m) > 0;
  });
  Poly out;
  for (auto& t : terms) {
    uint32_t c = t.c % ctx.characteristic;
    if (!out.terms.empty() && out.terms.back().m == t.m) {
      out.terms.back().c = F.add(out.terms.back().c, c);
      if (out.terms.back().c == 0) out.terms.pop_back();
    } else if (c != 0) {
      out.terms.push_back({t.m, c});
    }
  }
  return out;
}

Poly poly_scale(const RingContext& ctx, const Poly& f, uint32_t c) {
  PrimeField F{ctx.characteristic};
  Poly out;
  if (c == 0) return out;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) out.terms.push_back({t.m, F.mul(t.c, c)});
  return out;
}

Poly poly_mono_mul(const Poly& f, const Mono& m) {
  Poly out;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) out.terms.push_back({mono_mul(t.m, m), t.c});
  return out;
}

static Poly merge_add(const RingContext& ctx, const Poly& a, const Poly& b, bool subtract) {
  PrimeField F{ctx.characteristic};
  Poly out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (i == a.terms.size()) {
      Term t = b.terms[j++];
      if (subtract) t.c = F.neg(t.c);
      out.terms.push_back(t);
    } else if (j == b.terms.size()) {
      out.terms.push_back(a.terms[i++]);
    } else {
      int c = mono_cmp(ctx, a.terms[i].m, b.terms[j].m);
      if (c > 0) {
        out.terms.push_back(a.terms[i++]);
      } else if (c < 0) {
        Term t = b.terms[j++];
        if (subtract) t.c = F.neg(t.c);
        out.terms.push_back(t);
      } else {
        uint32_t v = subtract ? F.sub(a.terms[i].c, b.terms[j].c)
                              : F.add(a.terms[i].c, b.terms[j].c);
        if (v) out.terms.push_back({a.terms[i].m, v});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

Poly poly_add(const RingContext& ctx, const Poly& a, const Poly& b) {
  return merge_add(ctx, a, b, false);
}

Poly poly_sub(const RingContext& ctx, const Poly& a, const Poly& b) {
  return merge_add(ctx, a, b, true);
}

Poly poly_monic(const RingContext& ctx, const Poly& f) {
  if (f.zero()) return f;
  PrimeField F{ctx.characteristic};
  return poly_scale(ctx, f, F.inv(f.lead().c));
}

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (!(a.terms[i].m == b.terms[i].m) || a.terms[i].c != b.terms[i].c) return false;
  return true;
}

bool poly_homogeneous(const Poly& f) {
  for (const auto& t : f.terms)
    if (t.m.deg != f.terms.front().m.deg) return false;
  return true;
}

int GraphRing::col_of(int label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label)
    fail(ErrorKind::UnknownVertex, "label " + std::to_string(label) + " is not in the ring");
  return static_cast<int>(it - labels.begin()) + 1;
}

GraphRing make_graph_ring(const Graph& g, int m, uint32_t characteristic, MonoOrder order) {
  GraphRing ring;
  ring.labels = g.vertices();
  ring.ctx = make_ring(m, g.num_vertices(), characteristic, order);
  return ring;
}

static Poly edge_minor(const GraphRing& ring, int i, int j, int t, int l) {
  const RingContext& ctx = ring.ctx;
  Mono m1 = mono_mul(mono_var(ctx.var_index(i, t)), mono_var(ctx.var_index(j, l)));
  Mono m2 = mono_mul(mono_var(ctx.var_index(i, l)), mono_var(ctx.var_index(j, t)));
  return poly_from_terms(ctx, {{m1, 1}, {m2, ctx.characteristic - 1}});
}

std::vector<Poly> build_ideal_generators(const GraphRing& ring, const Graph& g) {
  std::vector<Poly> gens;
  for (const auto& e : g.edges()) {
    int t = ring.col_of(e.first), l = ring.col_of(e.second);
    for (int i = 1; i <= ring.ctx.m; ++i)
      for (int j = i + 1; j <= ring.ctx.m; ++j) gens.push_back(edge_minor(ring, i, j, t, l));
  }
  return gens;
}

std::vector<Poly> build_PT_ideal(const GraphRing& ring, const Graph& g, const VertexSet& T) {
  std::vector<Poly> gens;
  for (int v : T) {
    int col = ring.col_of(v);
    for (int i = 1; i <= ring.ctx.m; ++i)
      gens.push_back(poly_from_terms(ring.ctx, {{mono_var(ring.ctx.var_index(i, col)), 1}}));
  }
  for (const auto& comp : connected_components(delete_vertices(g, T)))
    for (size_t a = 0; a < comp.size(); ++a)
      for (size_t b = a + 1; b < comp.size(); ++b) {
        int t = ring.col_of(comp[a]), l = ring.col_of(comp[b]);
        for (int i = 1; i <= ring.ctx.m; ++i)
          for (int j = i + 1; j <= ring.ctx.m; ++j)
            gens.push_back(edge_minor(ring, i, j, t, l));
      }
  return gens;
}

std::string poly_to_string(const GraphRing& ring, const Poly& f) {
  if (f.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms) {
    if (!first) os << " + ";
    first = false;
    os << t.c;
    for (int idx = 0; idx < ring.ctx.nvars; ++idx) {
      if (!t.m.e[idx]) continue;
      if (idx == ring.ctx.m * ring.ctx.ncols) {
        os << "*t";
      } else {
        int row = idx / ring.ctx.ncols + 1;
        int col = idx % ring.ctx.ncols + 1;
        os << "*x[" << row << ',' << ring.label_of_col(col) << ']';
      }
      if (t.m.e[idx] > 1) os << '^' << static_cast<int>(t.m.e[idx]);
    }
  }
  return os.str();
}

std::string ideal_to_string(const GraphRing& ring, const std::vector<Poly>& gens) {
  std::ostringstream os;
  for (const auto& f : gens) os << poly_to_string(ring, f) << '\n';
  return os.str();
}

std::vector<long long> poly1_mul(const std::vector<long long>& a,
                                 const std::vector<long long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<long long> poly1_add(const std::vector<long long>& a,
                                 const std::vector<long long>& b) {
  std::vector<long long> out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

namespace {

std::vector<Mono> minimalize_monos(std::vector<Mono> gens) {
  std::sort(gens.begin(), gens.end(), [](const Mono& a, const Mono& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.e < b.e;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Mono> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& kept : out)
      if (mono_divides(kept, g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  return out;
}

std::vector<long long> hilbert_rec(std::vector<Mono> gens) {
  gens = minimalize_monos(std::move(gens));
  if (gens.empty()) return {1};
  if (gens.front().deg == 0) return {};
  bool pairwise_coprime = true;
  for (size_t i = 0; i < gens.size() && pairwise_coprime; ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!mono_coprime(gens[i], gens[j])) {
        pairwise_coprime = false;
        break;
      }
  if (pairwise_coprime) {
    std::vector<long long> acc{1};
    for (const auto& g : gens) {
      std::vector<long long> factor(g.deg + 1, 0);
      factor[0] = 1;
      factor[g.deg] = -1;
      acc = poly1_mul(acc, factor);
    }
    return acc;
  }
  // Pivot on the most frequent variable among generator supports.
  std::array<int, kMaxVars> freq{};
  for (const auto& g : gens)
    for (int i = 0; i < kMaxVars; ++i)
      if (g.e[i]) ++freq[i];
  int pivot = 0;
  for (int i = 1; i < kMaxVars; ++i)
    if (freq[i] > freq[pivot]) pivot = i;

  std::vector<Mono> plus, colon;
  Mono x = mono_var(pivot);
  plus.push_back(x);
  for (const auto& g : gens) {
    if (g.e[pivot]) {
      colon.push_back(mono_div(g, x));
    } else {
      plus.push_back(g);
      colon.push_back(g);
    }
  }
  std::vector<long long> a = hilbert_rec(std::move(plus));
  std::vector<long long> b = hilbert_rec(std::move(colon));
  b.insert(b.begin(), 0); // times t
  return poly1_add(a, b);
}

} // namespace

std::vector<long long> hilbert_numerator(const std::vector<Mono>& gens, int nvars) {
  (void)nvars;
  return hilbert_rec(gens);
}

} // namespace bei
