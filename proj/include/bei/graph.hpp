#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bei {

// Sorted ascending, no duplicates.
using VertexSet = std::vector<int>;

using Edge = std::pair<int, int>; // stored with first < second

VertexSet sorted_unique(std::vector<int> v);
bool contains(const VertexSet& s, int v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

// Immutable simple graph over integer labels. Labels are preserved by all
// operations; they are never re-packed.
class Graph {
public:
  Graph() = default;
  Graph(VertexSet vertices, std::vector<Edge> edges);

  const VertexSet& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  bool has_vertex(int v) const;
  bool has_edge(int a, int b) const;
  int degree(int v) const;

  const VertexSet& adjacent(int v) const; // open neighborhood, sorted

  std::string to_string() const; // canonical "V:...;E:..." form
  bool operator==(const Graph& o) const {
    return vertices_ == o.vertices_ && edges_ == o.edges_;
  }

private:
  VertexSet vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<int, VertexSet> adj_;
};

Graph graph_from_string(const std::string& text);

VertexSet neighbors(const Graph& g, int v, bool closed);
Graph delete_vertices(const Graph& g, const VertexSet& drop);
Graph saturate_neighborhood(const Graph& g, int v);
std::vector<VertexSet> connected_components(const Graph& g);
int num_components(const Graph& g);
VertexSet leaves(const Graph& g);
bool is_internal(const Graph& g, int v);
bool is_cut_vertex(const Graph& g, int v);
bool is_connected(const Graph& g);

// One (side1, side2) pair per bipartite graph; vertex sets cover all labels.
// Within every connected component the side containing the minimal label is
// side 1. Returns nullopt when an odd cycle exists.
std::optional<std::pair<VertexSet, VertexSet>> is_bipartite(const Graph& g);

Graph complete_graph_on(const VertexSet& verts);
Graph disjoint_union(const Graph& a, const Graph& b);

} // namespace bei
