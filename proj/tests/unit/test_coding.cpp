#include <doctest.h>

#include <algorithm>

#include "mtf/coding.hpp"
#include "mtf/verify.hpp"

using namespace mtf;

namespace {

TreeSpec leaf(Color c) { return TreeSpec{c, {}}; }
TreeSpec node(Color c, std::vector<TreeSpec> kids) { return TreeSpec{c, std::move(kids)}; }

TypedForest root_and_child() { return TypedForest::from_trees(2, {node(0, {leaf(1)})}); }

// Smallest forest on which sampling at first passage times and collapsing
// subtrees give different orders of the type-2 steps.
TypedForest reordering_forest() {
  return TypedForest::from_trees(2, {node(0, {node(1, {node(1, {node(0, {leaf(1)})})}), node(1, {leaf(0)})})});
}

std::vector<IntVec> sorted_steps(const CodingSequence& x, int i) {
  std::vector<IntVec> steps = x.increments()[i];
  std::sort(steps.begin(), steps.end());
  return steps;
}

bool any_smaller_solution(const IntVec& r, const CodingSequence& x, const IntVec& n) {
  IntVec s(n.size(), 0);
  while (true) {
    if (s != n && is_solution(r, x, s)) return true;
    std::size_t k = 0;
    while (k < s.size() && s[k] == n[k]) s[k++] = 0;
    if (k == s.size()) return false;
    ++s[k];
  }
}

}  // namespace

TEST_CASE("encode of the empty forest") {
  const CodingSequence x = encode(TypedForest(2));
  CHECK(x.lengths() == IntVec{0, 0});
}

TEST_CASE("encode root with one child of the other type") {
  const CodingSequence x = encode(root_and_child());
  REQUIRE(x.lengths() == IntVec{1, 1});
  CHECK(x.value(0, 0) == IntVec{0, 0});
  CHECK(x.value(0, 1) == IntVec{-1, 1});
  CHECK(x.value(1, 0) == IntVec{0, 0});
  CHECK(x.value(1, 1) == IntVec{0, -1});
  CHECK(smallest_solution({1, 0}, x) == IntVec{1, 1});
  CHECK(decode(x, {0}, {1, 0}) == root_and_child());
}

TEST_CASE("encode final diagonal values count subtrees") {
  const TypedForest f =
      TypedForest::from_trees(2, {node(0, {node(0, {leaf(1)}), node(1, {leaf(0), node(1, {leaf(1)})})}),
                                  node(1, {leaf(0), leaf(0)})});
  const CodingSequence x = encode(f);
  CHECK(x.lengths() == f.type_counts());
  for (int i = 0; i < 2; ++i)
    CHECK(x.value(i, i, x.length(i)) == -static_cast<int>(subtree_roots(f, i).size()));
}

TEST_CASE("first passage") {
  const CodingSequence x = CodingSequence::from_increments(1, {{{-1}, {-1}}});
  CHECK(first_passage(x, 0, 0) == 0);
  CHECK(first_passage(x, 0, 2) == 2);
  CHECK_THROWS_AS(first_passage(x, 0, 3), LevelNotReached);

  // Single-type tree with 5 vertices: tau_1 is the vertex count.
  const TypedForest t = TypedForest::from_trees(1, {node(0, {node(0, {leaf(0), leaf(0)}), leaf(0)})});
  CHECK(first_passage(encode(t), 0, 1) == 5);
}

TEST_CASE("S_d constraints are enforced") {
  CHECK_THROWS_AS(CodingSequence::from_increments(1, {{{-2}}}), InvalidCoding);
  CHECK_THROWS_AS(CodingSequence::from_increments(2, {{{-1, -1}}, {}}), InvalidCoding);
  CHECK_NOTHROW(CodingSequence::from_increments(2, {{{-1, 3}}, {}}));
}

TEST_CASE("reduce_sequence of an already reduced sequence") {
  const CodingSequence x = CodingSequence::from_increments(2, {{{-1, 0}, {-1, 0}}, {{0, -1}}});
  CHECK(reduce_sequence(x) == x);
}

TEST_CASE("smallest solution absent when the level is unreachable") {
  const CodingSequence x = CodingSequence::from_increments(2, {{{0, 0}, {1, 0}}, {}});
  CHECK(!smallest_solution({1, 0}, x).has_value());
}

TEST_CASE("decode the single vertex") {
  const CodingSequence x = CodingSequence::from_increments(2, {{{-1, 0}}, {}});
  CHECK(decode(x, {0}, {1, 0}) == TypedForest::from_trees(2, {leaf(0)}));
  CHECK_THROWS_AS(decode(x, {1}, {1, 0}), InvalidCoding);
  CHECK_THROWS_AS(decode(x, {0}, {2, 0}), InvalidCoding);
}

TEST_CASE("round trip, smallest solution and minimality over small forests") {
  int forests = 0;
  for_each_small_forest(2, 5, [&](const TypedForest& f) {
    ++forests;
    const CodingSequence x = encode(f);
    const IntVec r = f.root_counts();
    const auto n = smallest_solution(r, x);
    REQUIRE(n.has_value());
    CHECK(*n == f.type_counts());
    CHECK(!any_smaller_solution(r, x, *n));
    CHECK(decode(x, f.root_types(), r) == f);
  });
  CHECK(forests > 0);
}

TEST_CASE("reduced sequence agrees with the reduced forest up to six vertices") {
  for_each_small_forest(2, 6, [&](const TypedForest& f) {
    CHECK(reduce_sequence(encode(f)) == encode(reduce(f)));
  });
}

TEST_CASE("seven-vertex forest where the reduced sequence reorders steps") {
  const TypedForest f = reordering_forest();
  REQUIRE(f.size() == 7);
  const CodingSequence xbar = reduce_sequence(encode(f));
  const CodingSequence xr = encode(reduce(f));
  CHECK(xbar.lengths() == xr.lengths());
  for (int i = 0; i < 2; ++i) CHECK(sorted_steps(xbar, i) == sorted_steps(xr, i));
  CHECK(xbar != xr);
  CHECK(xbar.lengths() == IntVec{static_cast<int>(subtree_roots(f, 0).size()),
                                 static_cast<int>(subtree_roots(f, 1).size())});
}
