#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtf/numeric.hpp"

namespace mtf {

/// Vertex color, 0-based internally (JSON uses 1-based colors).
using Color = int;
using RootTypeSequence = std::vector<Color>;

/// Nested description of one tree, used for construction and JSON.
struct TreeSpec {
  Color color = 0;
  std::vector<TreeSpec> children;

  bool operator==(const TreeSpec&) const = default;
};

/// Ordered d-type plane forest.
///
/// Vertices are stored in breadth-first order, tree by tree, so vertex ids are
/// the BFS labels and the children of a vertex occupy a contiguous id range.
/// Sibling colors are nondecreasing by construction.
class TypedForest {
 public:
  TypedForest() = default;
  explicit TypedForest(int d);

  /// Builds from root colors and the per-vertex offspring vectors listed in
  /// BFS order. Throws InvalidForest when the sequence does not describe a
  /// forest with exactly those vertices.
  static TypedForest from_offspring(int d, std::span<const Color> root_colors,
                                    std::span<const IntVec> offspring);
  /// Validating constructor: rejects out-of-range colors and decreasing siblings.
  static TypedForest from_trees(int d, const std::vector<TreeSpec>& trees);
  /// Stably sorts every sibling list by color, then builds.
  static TypedForest normalized(int d, std::vector<TreeSpec> trees);

  int types() const { return d_; }
  int size() const { return static_cast<int>(color_.size()); }
  bool empty() const { return color_.empty(); }
  int tree_count() const { return static_cast<int>(tree_start_.size()); }

  Color color(int v) const { return color_[v]; }
  int parent(int v) const { return parent_[v]; }
  int first_child(int v) const { return first_child_[v]; }
  int child_count(int v) const;
  /// Number of type-j children of v.
  int offspring(int v, Color j) const { return offspring_[static_cast<std::size_t>(v) * d_ + j]; }
  IntVec offspring(int v) const;
  /// First vertex id of tree t; tree t spans [tree_start(t), tree_start(t+1)).
  int tree_start(int t) const { return tree_start_[t]; }
  int tree_end(int t) const;

  std::vector<int> roots() const { return tree_start_; }
  RootTypeSequence root_types() const;
  IntVec root_counts() const;
  IntVec type_counts() const;

  std::vector<TreeSpec> to_trees() const;

  bool operator==(const TypedForest&) const = default;

 private:
  int d_ = 1;
  std::vector<Color> color_;
  std::vector<int> parent_;
  std::vector<int> first_child_;
  std::vector<int> offspring_;  // size() * d_ entries
  std::vector<int> tree_start_;
};

/// BFS labels u_1, u_2, ... as vertex ids (tree by tree).
std::vector<int> bfs_order(const TypedForest& f);

/// Vertex ids of the type-i subforest, listed in that subforest's own BFS
/// order; subtrees are ranked by the position of their roots in f.
std::vector<int> subforest_vertices(const TypedForest& f, Color i);
/// Ids of the roots of the monochromatic subtrees of color i, in f's order.
std::vector<int> subtree_roots(const TypedForest& f, Color i);
/// The type-i subforest as a forest of its own (every color equals i).
TypedForest subforest(const TypedForest& f, Color i);

/// Collapses every monochromatic subtree into one vertex. Children of a
/// collapsed vertex are ordered by color, then by the position of the
/// corresponding subtree roots in f.
TypedForest reduce(const TypedForest& f);

/// True when no vertex has a child of its own color.
bool is_reduced(const TypedForest& f);

/// Number of type-j vertices whose parent has type i, for i != j
/// (diagonal entries are zero).
IntMatrix edge_type_counts(const TypedForest& f);

}  // namespace mtf
