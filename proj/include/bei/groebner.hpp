#pragma once

#include <optional>
#include <vector>

#include "bei/ring.hpp"

namespace bei {

struct GBOptions {
  long pair_budget = 2000000;   // S-pairs processed
  long basis_budget = 20000;    // basis elements
  int var_cap = 24;             // applies to oracle entry points
};

// Unique reduced basis: monic, tails reduced, sorted by decreasing lead.
std::vector<Poly> groebner_basis(const RingContext& ctx, const std::vector<Poly>& gens,
                                 const GBOptions& opts = {});

Poly normal_form(const RingContext& ctx, const Poly& f, const std::vector<Poly>& basis);

std::vector<Mono> initial_ideal(const std::vector<Poly>& reduced_basis);

// Krull dimension of S/(monomial ideal) in an nvars-variable ring.
int monomial_dim(int nvars, const std::vector<Mono>& gens);

bool ideal_equal(const RingContext& ctx, const std::vector<Poly>& a,
                 const std::vector<Poly>& b, const GBOptions& opts = {});

bool ideal_contains(const RingContext& ctx, const std::vector<Poly>& reduced_basis,
                    const Poly& f);

// Intersection via one dominating auxiliary variable; returns generators in
// the base ring (a reduced basis for the intersection).
std::vector<Poly> ideal_intersection(const RingContext& base, const std::vector<Poly>& a,
                                     const std::vector<Poly>& b, const GBOptions& opts = {});

// dim of S/I via in(I) under the context order.
int oracle_dim(const RingContext& ctx, const std::vector<Poly>& gens,
               const GBOptions& opts = {});

} // namespace bei
