#include <doctest.h>

#include "mtf/enumeration.hpp"

using namespace mtf;

namespace {

Signature single_type(int r, int n) {
  return Signature{{r}, {n}, IntMatrix::square(1)};
}

}  // namespace

TEST_CASE("single-type plane counts") {
  // One root, three vertices: the path and the cherry.
  CHECK(count_plane_forests(single_type(1, 3)) == 2);
  CHECK(brute_force_plane(single_type(1, 3)) == 2);
  // Catalan numbers for one root.
  CHECK(count_plane_forests(single_type(1, 5)) == 14);
  CHECK(count_plane_forests(single_type(2, 4)) == brute_force_plane(single_type(2, 4)));
}

TEST_CASE("single-type labeled counts by degrees") {
  CHECK(count_single_type_by_degrees({2, 0, 0}) == 1);
  CHECK(brute_force_single_type_by_degrees({2, 0, 0}) == 1);
  CHECK(count_single_type_by_degrees({1, 1, 0}) == brute_force_single_type_by_degrees({1, 1, 0}));
  CHECK(count_single_type_by_degrees({0, 0, 0}) == 1);
  for (const IntVec& c : {IntVec{1, 0, 2, 0}, IntVec{0, 3, 0, 0}, IntVec{1, 1, 1, 0}})
    CHECK(count_single_type_by_degrees(c) == brute_force_single_type_by_degrees(c));
}

TEST_CASE("signature checks") {
  CHECK_THROWS_AS(check_enumeration_signature(single_type(0, 2)), InvalidArgument);
  CHECK_THROWS_AS(check_enumeration_signature(single_type(3, 2)), InvalidArgument);
  CHECK_NOTHROW(check_enumeration_signature(single_type(1, 2)));
}

TEST_CASE("canonical roots") {
  CHECK(canonical_roots({2, 1}) == RootTypeSequence{0, 0, 1});
  CHECK(canonical_roots({0, 2}) == RootTypeSequence{1, 1});
}

TEST_CASE("closed forms agree with brute force on two-type signatures") {
  int signatures = 0;
  for (const Signature& sig : admissible_signatures({3, 2})) {
    ++signatures;
    CHECK(count_plane_forests(sig) == brute_force_plane(sig));
    CHECK(count_labeled_by_edge_types(sig) == brute_force_labeled_by_edge_types(sig));
    CHECK(count_injective(sig) == brute_force_injective(sig));
    for_each_census(sig, [&](const Census& census) {
      CHECK(count_labeled_by_census(sig, census) == brute_force_labeled_by_census(sig, census));
      CHECK(count_unlabeled_by_census(sig, census) == brute_force_unlabeled_by_census(sig, census));
    });
    for_each_indegree_tuple(sig, [&](const IndegreeTuple& c) {
      CHECK(count_labeled_by_indegree(sig, c) == brute_force_labeled_by_indegree(sig, c));
    });
  }
  CHECK(signatures > 0);
}

TEST_CASE("fiber weights and direct enumeration give the same labeled counts") {
  for (const IntVec& sizes : {IntVec{2, 2}, IntVec{3, 1}, IntVec{1, 1, 2}}) {
    for (const Signature& sig : admissible_signatures(sizes)) {
      CHECK(brute_force_labeled_by_edge_types(sig, LabeledMethod::fiber) ==
            brute_force_labeled_by_edge_types(sig, LabeledMethod::materialize));
      for_each_census(sig, [&](const Census& census) {
        CHECK(brute_force_labeled_by_census(sig, census, LabeledMethod::fiber) ==
              brute_force_labeled_by_census(sig, census, LabeledMethod::materialize));
      });
    }
  }
}

TEST_CASE("labeled forests on small vertex sets") {
  // Rooted forests on n labeled vertices: (n + 1)^(n - 1).
  std::int64_t seen = 0;
  const std::int64_t visited = for_each_labeled_forest({4}, [&](const LabeledView&) { ++seen; });
  CHECK(visited == 125);
  CHECK(seen == 125);
}

TEST_CASE("generator honours the size limits") {
  GenerationLimits limits;
  limits.sizes = IntVec{2, 1};
  std::int64_t n = brute_force_generate(2, {0}, limits, [&](const ForestView& v) {
    CHECK(v.materialize().type_counts() == IntVec{2, 1});
  });
  CHECK(n > 0);
  limits.max_forests = 1;
  CHECK_THROWS_AS(brute_force_generate(2, {0}, limits, [](const ForestView&) {}), CapExceeded);
}
