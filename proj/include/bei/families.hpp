#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bei/graph.hpp"

namespace bei {

// Base clique K_n on labels 1..n plus ordered branches of cliques. Branch i
// hangs off the ordered base vertices partition[i] = (w_{i,1}, ..., w_{i,r_i});
// its j-th clique has branch_sizes[i][j-1] = a_{i,j} vertices, of which the
// first j are w_{i,1..j} and the rest are fresh. Fresh vertices of distinct
// branch cliques are disjoint.
struct FanSpec {
  int n = 0;
  std::vector<std::vector<int>> partition;
  std::vector<std::vector<int>> branch_sizes;
  std::vector<int> marks; // explicit designated leaf marks (atom-local), <= 2

  void validate() const;

  int k() const { return static_cast<int>(partition.size()); }
  int branch_length(int i) const { return static_cast<int>(partition[i].size()); }
  int a(int i, int j) const { return branch_sizes[i][j]; } // 0-based i, j
  int h(int i, int j) const { return branch_sizes[i][j] - (j + 1); }
  int total_base_marked() const; // |W|
  int total_vertices() const;    // n + sum of h
  bool pure() const;
  int delta() const; // number of cliques with h >= 2
  int clique_count() const;
  int max_clique_size() const;
  // Atom-local label of the free endpoint of branch i's first clique, when
  // that clique is an edge (a_{i,1} == 2); nullopt otherwise.
  std::optional<int> branch_leaf(int i) const;
  // Designated marks: explicit list if given, else the branch_leaf of the
  // first branch and (when k >= 2) of the last branch, where present.
  std::vector<int> designated_marks() const;
  // Index of the branch whose first clique's free endpoint is `mark`.
  std::optional<int> branch_of_leaf_mark(int mark) const;
};

struct MarkedGraph {
  Graph graph;
  std::vector<int> marks; // <= 2, each a leaf of graph

  void validate() const;
};

enum class ExprOp { Clique, Path, Fp, Fan, Circ, Star };

struct GraphExpr;
using ExprPtr = std::shared_ptr<const GraphExpr>;

struct GraphExpr {
  ExprOp op;
  int param = 0; // n for Clique, t for Path, p for Fp
  FanSpec fan;   // for Fan
  ExprPtr left, right;
  std::optional<int> left_mark, right_mark; // operand-local labels
};

ExprPtr expr_clique(int n);
ExprPtr expr_path(int t);
ExprPtr expr_fp(int p);
ExprPtr expr_fan(FanSpec spec);
ExprPtr expr_circ(ExprPtr left, ExprPtr right, std::optional<int> lm = {},
                  std::optional<int> rm = {});
ExprPtr expr_star(ExprPtr left, ExprPtr right, std::optional<int> lm = {},
                  std::optional<int> rm = {});

struct AtomRange {
  std::string kind;  // "K(3)", "Fp(2)", "path(4)", "fan(...)"
  int first_label = 0;
  int last_label = 0;
};

// Which global labels a composition node consumed, recorded in post-order
// (left subtree, right subtree, node). Labels refer to the pre-consumption
// numbering, so they always fall inside their atom's range.
struct NodeUse {
  const GraphExpr* node = nullptr;
  int left_mark = 0;
  int right_mark = 0;
};

struct Realization {
  Graph graph;
  std::vector<int> marks; // surviving marks, structural order (left before right)
  std::vector<AtomRange> atoms;
  std::vector<NodeUse> uses;
};

MarkedGraph realize_complete(int n);
MarkedGraph realize_path(int t);
MarkedGraph realize_fp(int p);
MarkedGraph realize_fan(const FanSpec& spec);

// Deletes both marked leaves and identifies their neighbors. Neither operand
// may be a single edge.
MarkedGraph compose_circ(const MarkedGraph& a, int mark_a, const MarkedGraph& b,
                         int mark_b);
// Identifies the two marked leaves.
MarkedGraph compose_star(const MarkedGraph& a, int mark_a, const MarkedGraph& b,
                         int mark_b);

Realization realize(const GraphExpr& expr);
Realization realize(const ExprPtr& expr);

// Number of vertices of the realization, computed without realizing.
int expr_vertex_count(const GraphExpr& expr);

} // namespace bei
