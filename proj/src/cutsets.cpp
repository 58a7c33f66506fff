#include "bei/cutsets.hpp"

#include <algorithm>
#include <string>

#include "bei/error.hpp"

namespace bei {

namespace {

bool is_simplicial(const Graph& g, int v) {
  const VertexSet& nb = g.adjacent(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (!g.has_edge(nb[i], nb[j])) return false;
  return true;
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool size_lex_less(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

} // namespace

bool is_cut_point_set(const Graph& g, const VertexSet& T) {
  for (int v : T)
    if (!g.has_vertex(v))
      fail(ErrorKind::UnknownVertex, "unknown vertex " + std::to_string(v));
  for (int v : T) {
    VertexSet rest;
    for (int w : T)
      if (w != v) rest.push_back(w);
    if (!is_cut_vertex(delete_vertices(g, rest), v)) return false;
  }
  return true;
}

std::vector<CutSetRecord> cut_point_sets(const Graph& g, int cap) {
  if (g.num_vertices() > cap)
    fail(ErrorKind::CapExceeded,
         "graph too large for cut-set enumeration: " + std::to_string(g.num_vertices()) +
             " vertices, cap " + std::to_string(cap));
  VertexSet cand;
  for (int v : g.vertices())
    if (!is_simplicial(g, v)) cand.push_back(v);

  std::vector<CutSetRecord> out;
  int nc = static_cast<int>(cand.size());
  for (int size = 0; size <= nc; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    bool more = true;
    while (more) {
      VertexSet T;
      T.reserve(size);
      for (int i : idx) T.push_back(cand[i]);
      if (is_cut_point_set(g, T))
        out.push_back({T, connected_components(delete_vertices(g, T))});
      more = size > 0 && next_combination(idx, nc);
      if (size == 0) break;
    }
  }
  return out;
}

std::vector<VertexSet> fan_cut_point_sets(const FanSpec& spec) {
  spec.validate();
  std::vector<VertexSet> out;
  std::vector<int> take(static_cast<std::size_t>(spec.k()), 0); // prefix lengths
  while (true) {
    VertexSet T;
    for (int i = 0; i < spec.k(); ++i)
      for (int j = 0; j < take[i]; ++j) T.push_back(spec.partition[i][j]);
    std::sort(T.begin(), T.end());
    if (static_cast<int>(T.size()) != spec.n) out.push_back(std::move(T));
    int pos = spec.k() - 1;
    while (pos >= 0 && take[pos] == spec.branch_length(pos)) take[pos--] = 0;
    if (pos < 0) break;
    ++take[pos];
  }
  std::sort(out.begin(), out.end(), size_lex_less);
  return out;
}

long minimal_prime_dim(const Graph& g, const VertexSet& T, int m) {
  if (!is_cut_point_set(g, T))
    fail(ErrorKind::InvalidInput, "set lacks the cut-point property");
  long c = num_components(delete_vertices(g, T));
  return c * (m - 1) + g.num_vertices() - static_cast<long>(T.size());
}

CombinatorialDim combinatorial_dim(const Graph& g, int m, int cap) {
  std::vector<CutSetRecord> family = cut_point_sets(g, cap);
  CombinatorialDim best;
  best.family_size = family.size();
  bool first = true;
  for (const CutSetRecord& rec : family) {
    long d = static_cast<long>(rec.components.size()) * (m - 1) + g.num_vertices() -
             static_cast<long>(rec.T.size());
    if (first || d > best.dim) {
      best.dim = d;
      best.witness = rec.T;
      first = false;
    }
  }
  return best;
}

} // namespace bei
