#include "bei/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "bei/error.hpp"

namespace bei {

VertexSet sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Graph::Graph(VertexSet vertices, std::vector<Edge> edges)
    : vertices_(sorted_unique(std::move(vertices))) {
  for (auto& e : edges) {
    if (e.first == e.second)
      fail(ErrorKind::InvalidInput, "loop edge at vertex " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!contains(vertices_, e.first) || !contains(vertices_, e.second))
      fail(ErrorKind::UnknownVertex, "edge (" + std::to_string(e.first) + "," +
                                         std::to_string(e.second) +
                                         ") uses a label outside the vertex set");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (int v : vertices_) adj_[v] = {};
  for (const auto& e : edges_) {
    adj_[e.first].push_back(e.second);
    adj_[e.second].push_back(e.first);
  }
  for (auto& [v, nbrs] : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_vertex(int v) const { return contains(vertices_, v); }

bool Graph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

int Graph::degree(int v) const { return static_cast<int>(adjacent(v).size()); }

const VertexSet& Graph::adjacent(int v) const {
  auto it = adj_.find(v);
  if (it == adj_.end())
    fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v) + " is not in the graph");
  return it->second;
}

std::string Graph::to_string() const {
  std::ostringstream os;
  os << "V:";
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (i) os << ',';
    os << vertices_[i];
  }
  os << ";E:";
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (i) os << ',';
    os << '(' << edges_[i].first << ',' << edges_[i].second << ')';
  }
  return os.str();
}

namespace {

int parse_int_at(const std::string& s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start)
    fail(ErrorKind::ParseError, "expected integer at position " + std::to_string(start) +
                                    " in graph text");
  return std::stoi(s.substr(start, pos - start));
}

void expect_char(const std::string& s, size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c)
    fail(ErrorKind::ParseError, std::string("expected '") + c + "' at position " +
                                    std::to_string(pos) + " in graph text");
  ++pos;
}

} // namespace

Graph graph_from_string(const std::string& text) {
  size_t pos = 0;
  expect_char(text, pos, 'V');
  expect_char(text, pos, ':');
  VertexSet verts;
  if (pos < text.size() && text[pos] != ';') {
    verts.push_back(parse_int_at(text, pos));
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      verts.push_back(parse_int_at(text, pos));
    }
  }
  expect_char(text, pos, ';');
  expect_char(text, pos, 'E');
  expect_char(text, pos, ':');
  std::vector<Edge> edges;
  while (pos < text.size()) {
    if (!edges.empty()) expect_char(text, pos, ',');
    expect_char(text, pos, '(');
    int a = parse_int_at(text, pos);
    expect_char(text, pos, ',');
    int b = parse_int_at(text, pos);
    expect_char(text, pos, ')');
    edges.push_back({a, b});
  }
  return Graph(std::move(verts), std::move(edges));
}

VertexSet neighbors(const Graph& g, int v, bool closed) {
  VertexSet out = g.adjacent(v);
  if (closed) out = set_union(out, {v});
  return out;
}

Graph delete_vertices(const Graph& g, const VertexSet& drop) {
  for (int v : drop)
    if (!g.has_vertex(v))
      fail(ErrorKind::UnknownVertex, "cannot delete unknown vertex " + std::to_string(v));
  VertexSet keep = set_difference(g.vertices(), drop);
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (contains(keep, e.first) && contains(keep, e.second)) edges.push_back(e);
  return Graph(std::move(keep), std::move(edges));
}

Graph saturate_neighborhood(const Graph& g, int v) {
  VertexSet closed = neighbors(g, v, true);
  std::vector<Edge> edges = g.edges();
  for (size_t i = 0; i < closed.size(); ++i)
    for (size_t j = i + 1; j < closed.size(); ++j)
      edges.push_back({closed[i], closed[j]});
  return Graph(g.vertices(), std::move(edges));
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> comps;
  std::unordered_map<int, bool> seen;
  for (int v : g.vertices()) seen[v] = false;
  for (int root : g.vertices()) {
    if (seen[root]) continue;
    VertexSet comp;
    std::queue<int> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      comp.push_back(u);
      for (int w : g.adjacent(u))
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    comps.push_back(sorted_unique(std::move(comp)));
  }
  // BFS from ascending roots already yields min-label order.
  return comps;
}

int num_components(const Graph& g) {
  return static_cast<int>(connected_components(g).size());
}

VertexSet leaves(const Graph& g) {
  VertexSet out;
  for (int v : g.vertices())
    if (g.degree(v) == 1) out.push_back(v);
  return out;
}

bool is_internal(const Graph& g, int v) { return g.degree(v) >= 2; }

bool is_cut_vertex(const Graph& g, int v) {
  if (!g.has_vertex(v))
    fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v) + " is not in the graph");
  return num_components(delete_vertices(g, {v})) > num_components(g);
}

bool is_connected(const Graph& g) {
  return g.num_vertices() == 0 || num_components(g) == 1;
}

std::optional<std::pair<VertexSet, VertexSet>> is_bipartite(const Graph& g) {
  std::unordered_map<int, int> color; // 1 or 2
  VertexSet side1, side2;
  for (int root : g.vertices()) {
    if (color.count(root)) continue;
    color[root] = 1; // minimal label of its component (ascending scan)
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.adjacent(u)) {
        auto it = color.find(w);
        if (it == color.end()) {
          color[w] = 3 - color[u];
          q.push(w);
        } else if (it->second == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  for (int v : g.vertices()) (color[v] == 1 ? side1 : side2).push_back(v);
  return std::make_pair(side1, side2);
}

Graph complete_graph_on(const VertexSet& verts) {
  std::vector<Edge> edges;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j) edges.push_back({verts[i], verts[j]});
  return Graph(verts, std::move(edges));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  VertexSet overlap = set_intersection(a.vertices(), b.vertices());
  if (!overlap.empty())
    fail(ErrorKind::InvalidInput, "disjoint union requires disjoint label sets");
  VertexSet verts = set_union(a.vertices(), b.vertices());
  std::vector<Edge> edges = a.edges();
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  return Graph(std::move(verts), std::move(edges));
}

} // namespace bei
