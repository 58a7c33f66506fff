#pragma once

#include <cstddef>
#include <vector>

#include "bei/families.hpp"
#include "bei/graph.hpp"

namespace bei {

struct CutSetRecord {
  VertexSet T;
  std::vector<VertexSet> components; // of the graph minus T, minimal-label order
};

// T qualifies when every v in T separates the graph left after removing the
// other members of T. The empty set always qualifies.
bool is_cut_point_set(const Graph& g, const VertexSet& T);

// Every qualifying set, smallest first and lexicographic within a size.
// Enumeration only considers non-simplicial vertices: a vertex whose
// neighborhood is a clique can never separate an induced subgraph.
std::vector<CutSetRecord> cut_point_sets(const Graph& g, int cap = 20);

// Closed form for the fan families: unions of prefixes of the ordered parts,
// except any union that swallows the whole base.
std::vector<VertexSet> fan_cut_point_sets(const FanSpec& spec);

// c(T)(m-1) + |V| - |T| for a qualifying T.
long minimal_prime_dim(const Graph& g, const VertexSet& T, int m);

struct CombinatorialDim {
  long dim = 0;
  VertexSet witness;
  std::size_t family_size = 0;
};

CombinatorialDim combinatorial_dim(const Graph& g, int m, int cap = 20);

} // namespace bei
