#include <doctest.h>

#include "mtf/forest.hpp"

using namespace mtf;

namespace {

TreeSpec leaf(Color c) { return TreeSpec{c, {}}; }
TreeSpec node(Color c, std::vector<TreeSpec> kids) { return TreeSpec{c, std::move(kids)}; }

// Tree 1: 0 -> [0 -> [1], 1 -> [0, 1 -> [1]]]. Tree 2: 1 -> [0, 0].
TypedForest sample() {
  return TypedForest::from_trees(
      2, {node(0, {node(0, {leaf(1)}), node(1, {leaf(0), node(1, {leaf(1)})})}), node(1, {leaf(0), leaf(0)})});
}

}  // namespace

TEST_CASE("bfs order of small forests") {
  CHECK(bfs_order(TypedForest(2)).empty());
  const TypedForest single = TypedForest::from_trees(2, {leaf(0)});
  CHECK(bfs_order(single) == std::vector<int>{0});

  const TypedForest path = TypedForest::from_trees(1, {node(0, {node(0, {leaf(0)})})});
  CHECK(bfs_order(path) == std::vector<int>{0, 1, 2});
  CHECK(path.parent(1) == 0);
  CHECK(path.parent(2) == 1);
}

TEST_CASE("bfs order visits generations left to right, tree by tree") {
  const TypedForest f = sample();
  REQUIRE(f.size() == 10);
  CHECK(f.tree_count() == 2);
  // First tree: root, its two children, then grandchildren, then depth 3.
  const std::vector<Color> colors{0, 0, 1, 1, 0, 1, 1, 1, 0, 0};
  for (int v = 0; v < f.size(); ++v) CHECK(f.color(v) == colors[v]);
  for (int v = 1; v < f.size(); ++v)
    if (f.parent(v) >= 0) CHECK(f.parent(v) < v);
  CHECK(f.root_types() == RootTypeSequence{0, 1});
  CHECK(f.type_counts() == IntVec{5, 5});
  CHECK(f.root_counts() == IntVec{1, 1});
}

TEST_CASE("from_trees rejects bad input") {
  CHECK_THROWS_AS(TypedForest::from_trees(2, {node(0, {leaf(1), leaf(0)})}), InvalidForest);
  CHECK_THROWS_AS(TypedForest::from_trees(2, {leaf(2)}), InvalidForest);
  CHECK_THROWS_AS(TypedForest::from_trees(2, {leaf(-1)}), InvalidForest);
  const TypedForest n = TypedForest::normalized(2, {node(0, {leaf(1), leaf(0)})});
  CHECK(n == TypedForest::from_trees(2, {node(0, {leaf(0), leaf(1)})}));
}

TEST_CASE("to_trees round trip") {
  const TypedForest f = sample();
  CHECK(TypedForest::from_trees(2, f.to_trees()) == f);
}

TEST_CASE("subforest of monochromatic forests") {
  const TypedForest mono = TypedForest::from_trees(2, {node(0, {leaf(0), leaf(0)}), leaf(0)});
  CHECK(subforest(mono, 0) == mono);
  CHECK(subforest(mono, 1).empty());
}

TEST_CASE("subforest ranks subtrees by their roots in f") {
  const TypedForest f = sample();
  // Type-0 subtrees: {0, 1}, {4}, {8}, {9}.
  CHECK(subtree_roots(f, 0) == std::vector<int>{0, 4, 8, 9});
  CHECK(subforest_vertices(f, 0) == std::vector<int>{0, 1, 4, 8, 9});
  const TypedForest f0 = subforest(f, 0);
  CHECK(f0.tree_count() == 4);
  CHECK(f0.type_counts() == IntVec{5, 0});

  const TypedForest f1 = subforest(f, 1);
  // Type-1 subtrees: {2, 5, 6}, {3}, {7}.
  CHECK(subtree_roots(f, 1) == std::vector<int>{2, 3, 7});
  CHECK(f1.size() == 5);
  CHECK(f1.tree_count() == 3);
}

TEST_CASE("reduce collapses monochromatic subtrees") {
  const TypedForest f = sample();
  const TypedForest r = reduce(f);
  CHECK(is_reduced(r));
  CHECK(!is_reduced(f));
  CHECK(r.type_counts() == IntVec{static_cast<int>(subtree_roots(f, 0).size()),
                                  static_cast<int>(subtree_roots(f, 1).size())});
  CHECK(r.root_types() == f.root_types());
  CHECK(reduce(r) == r);

  const TypedForest mono = TypedForest::from_trees(2, {node(1, {leaf(1), node(1, {leaf(1)})})});
  CHECK(reduce(mono) == TypedForest::from_trees(2, {leaf(1)}));
}

TEST_CASE("edge type counts") {
  const TypedForest f = sample();
  const IntMatrix k = edge_type_counts(f);
  CHECK(k(0, 0) == 0);
  CHECK(k(1, 1) == 0);
  int edges = 0;
  for (int v = 0; v < f.size(); ++v)
    if (f.parent(v) >= 0 && f.color(f.parent(v)) != f.color(v)) ++edges;
  CHECK(k(0, 1) + k(1, 0) == edges);
}
