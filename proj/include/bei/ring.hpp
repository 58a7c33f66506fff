#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bei/graph.hpp"

namespace bei {

inline constexpr int kMaxVars = 32;

// Exponent vector with cached total degree. Index 0 is the largest variable.
struct Mono {
  std::array<uint8_t, kMaxVars> e{};
  uint16_t deg = 0;

  bool operator==(const Mono& o) const { return deg == o.deg && e == o.e; }
};

enum class MonoOrder { DegRevLex, Lex, ElimLast };

const char* order_name(MonoOrder o);
MonoOrder order_from_name(const std::string& name);

// Rows i in 1..m (clique side), columns j in 1..ncols (graph side), variable
// x[i,j] at index (i-1)*ncols + (j-1); x[1,1] is the largest variable. With
// ElimLast an extra auxiliary variable sits at index nvars-1 and dominates.
struct RingContext {
  int m = 0;
  int ncols = 0;
  int nvars = 0;
  uint32_t characteristic = 32003;
  MonoOrder order = MonoOrder::DegRevLex;

  int var_index(int row, int col) const { return (row - 1) * ncols + (col - 1); }
};

RingContext make_ring(int m, int ncols, uint32_t characteristic, MonoOrder order);
// Same ring plus one dominating auxiliary variable (for intersections).
RingContext extend_with_aux(const RingContext& base);

// Returns >0 when a > b, <0 when a < b, 0 when equal.
int mono_cmp(const RingContext& ctx, const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b); // a | b
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b); // a / b, assumes divisible
Mono mono_lcm(const Mono& a, const Mono& b);
bool mono_coprime(const Mono& a, const Mono& b);
uint32_t mono_mask(const Mono& a);
Mono mono_one();
Mono mono_var(int idx, int exp = 1);

struct PrimeField {
  uint32_t p;
  uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p ? s - p : s; }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
  uint32_t inv(uint32_t a) const;
  uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
  }
};

struct Term {
  Mono m;
  uint32_t c = 0;
};

// Terms sorted strictly descending in the ring order; no zero coefficients.
struct Poly {
  std::vector<Term> terms;
  bool zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
};

Poly poly_from_terms(const RingContext& ctx, std::vector<Term> terms);
Poly poly_scale(const RingContext& ctx, const Poly& f, uint32_t c);
Poly poly_mono_mul(const Poly& f, const Mono& m);
Poly poly_add(const RingContext& ctx, const Poly& a, const Poly& b);
Poly poly_sub(const RingContext& ctx, const Poly& a, const Poly& b);
Poly poly_monic(const RingContext& ctx, const Poly& f);
bool poly_equal(const Poly& a, const Poly& b);
bool poly_homogeneous(const Poly& f);

// Ring attached to a graph: columns follow the sorted vertex labels.
struct GraphRing {
  RingContext ctx;
  VertexSet labels;

  int col_of(int label) const;
  int label_of_col(int col) const { return labels[col - 1]; }
};

GraphRing make_graph_ring(const Graph& g, int m, uint32_t characteristic = 32003,
                          MonoOrder order = MonoOrder::DegRevLex);

// One generator x[i,t]x[j,l] - x[i,l]x[j,t] per row pair i<j and edge {t,l}.
std::vector<Poly> build_ideal_generators(const GraphRing& ring, const Graph& g);

// Variables x[i,v] for v in T plus the generators of the completed components
// of g minus T.
std::vector<Poly> build_PT_ideal(const GraphRing& ring, const Graph& g, const VertexSet& T);

std::string poly_to_string(const GraphRing& ring, const Poly& f);
std::string ideal_to_string(const GraphRing& ring, const std::vector<Poly>& gens);

// Numerator of the Hilbert series of S/(monomial ideal) on the (1-t)^nvars
// denominator scale.
std::vector<long long> hilbert_numerator(const std::vector<Mono>& gens, int nvars);

std::vector<long long> poly1_mul(const std::vector<long long>& a,
                                 const std::vector<long long>& b);
std::vector<long long> poly1_add(const std::vector<long long>& a,
                                 const std::vector<long long>& b);

} // namespace bei
