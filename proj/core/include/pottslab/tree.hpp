#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pottslab/params.hpp"
#include "pottslab/rng.hpp"

namespace pottslab {

/// Immutable rooted tree over vertices 0..n-1. Construction validates that the
/// parent relation describes a single tree rooted at `root`.
class RootedTree {
 public:
  /// parent[v] = -1 exactly for v == root; everything else points at its parent.
  RootedTree(int root, std::vector<int> parent);

  /// Builds from explicit (parent, child) edge pairs; validates connectivity,
  /// acyclicity, and that every non-root vertex has exactly one parent.
  static RootedTree from_edges(int vertex_count, int root,
                               const std::vector<std::pair<int, int>>& edges);

  static RootedTree single_vertex();

  /// Complete arity-ary tree of the given height (root at depth 0).
  static RootedTree complete(int arity, int height);

  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int child_count(int v) const { return static_cast<int>(children_[v].size()); }

  /// Degree in the undirected sense (children plus parent).
  int degree(int v) const { return child_count(v) + (v == root_ ? 0 : 1); }

  int depth(int v) const { return depth_[v]; }
  int height() const { return height_; }

  /// Vertices with children listed before their parent; the DP evaluation order.
  const std::vector<int>& post_order() const { return post_order_; }

  std::vector<int> vertices_at_depth(int t) const;

  /// Max degree <= d+1 with the root of degree <= d; equivalently every vertex
  /// has at most d children.
  bool respects_degree_bound(int d) const;

 private:
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  std::vector<int> post_order_;
  int height_ = 0;
};

/// Partial coloring of a tree's vertices; colors are 0-based internally and
/// 1-based in every file format and report.
class BoundaryCondition {
 public:
  explicit BoundaryCondition(int vertex_count) : color_(vertex_count, kFree) {}

  static constexpr int kFree = -1;

  void fix(int v, int c) { color_[v] = c; }
  void release(int v) { color_[v] = kFree; }
  bool fixed(int v) const { return color_[v] != kFree; }
  int color(int v) const { return color_[v]; }
  int vertex_count() const { return static_cast<int>(color_.size()); }

  int fixed_count() const;
  int free_count() const { return vertex_count() - fixed_count(); }

  /// Throws unless every assigned color lies in [0, q).
  void validate(int q) const;

  bool operator==(const BoundaryCondition&) const = default;

 private:
  std::vector<int> color_;
};

/// A tree instance parsed from the JSON input document
/// {"q":…, "w":…, "root":…, "edges":[[p,c],…], "boundary":{"v":color,…}}
/// with 1-based colors; "d" is optional and defaults to the largest child
/// count found in the tree (floored at 2).
struct Instance {
  PottsParams params;
  RootedTree tree;
  BoundaryCondition boundary;
};

Instance load_instance_json(const std::string& text);
Instance load_instance_file(const std::string& path);

/// Random rooted tree by uniform parent attachment: vertex v picks its parent
/// uniformly among vertices 0..v-1 that still have fewer than max_children
/// children. Reproducible given the RNG state.
RootedTree random_tree(Rng& rng, int vertex_count, int max_children);

/// Fixes each non-root vertex independently with probability fix_prob to a
/// uniform color; the root always stays free.
BoundaryCondition random_boundary(Rng& rng, const RootedTree& tree, int q, double fix_prob);

}  // namespace pottslab
