#include <doctest.h>

#include <random>

#include "mtf/cyclic.hpp"
#include "mtf/verify.hpp"

using namespace mtf;

TEST_CASE("elementary forests") {
  CHECK(enumerate_elementary_forests(1) == std::vector<ElementaryForestCode>{{0}});
  CHECK(enumerate_elementary_forests(2) == std::vector<ElementaryForestCode>{{0, 0}, {0, 1}, {2, 0}});
  // Rooted forests on 3 labeled vertices: (n + 1)^(n - 1) = 16.
  CHECK(enumerate_elementary_forests(3).size() == 16);
  for (int d = 1; d <= 6; ++d) CHECK(elementary_forests_by_filter(d) == elementary_forests_by_growth(d));
  CHECK(!is_elementary_code({2, 1}));
}

TEST_CASE("determinant and elementary forest sum on a 2x2 example") {
  IntMatrix off = IntMatrix::square(2);
  off(0, 1) = 1;
  const LaplacianMatrix k = LaplacianMatrix::from_offdiagonal({1, 0}, off);
  CHECK(k(0, 0) == -1);
  CHECK(k(1, 1) == -1);
  CHECK(k.det_minus() == 1);
  CHECK(elementary_forest_sum(k, {1, 0}) == 1);
  CHECK(k.roots() == IntVec{1, 0});
}

TEST_CASE("identity-like matrix") {
  const LaplacianMatrix k = LaplacianMatrix::from_offdiagonal({1, 1, 1}, IntMatrix::square(3));
  CHECK(k.det_minus() == 1);
  CHECK(elementary_forest_sum(k, {1, 1, 1}) == 1);
}

TEST_CASE("cyclic shift basics") {
  const CodingSequence x = CodingSequence::from_increments(2, {{{1, 0}, {-1, 2}, {-1, 0}}, {{0, -1}, {3, 0}}});
  const IntVec n = x.lengths();
  CHECK(cyclic_shift(x, {0, 0}, n) == x);
  for (int q0 = 0; q0 < n[0]; ++q0)
    for (int q1 = 0; q1 < n[1]; ++q1) {
      const CodingSequence y = cyclic_shift(x, {q0, q1}, n);
      CHECK(endpoint_matrix(y, n) == endpoint_matrix(x, n));
      const IntVec back{q0 == 0 ? 0 : n[0] - q0, q1 == 0 ? 0 : n[1] - q1};
      CHECK(cyclic_shift(y, back, n) == x);
    }
  CHECK_THROWS(cyclic_shift(x, {3, 0}, n));
}

TEST_CASE("good shifts of the root and child example") {
  const CodingSequence x = CodingSequence::from_increments(2, {{{-1, 1}}, {{0, -1}}});
  CHECK(count_good_shifts({1, 0}, x, {1, 1}) == 1);
  CHECK(cyclic_determinant(x, {1, 1}) == 1);
}

TEST_CASE("good shifts equal the determinant on random sequences") {
  std::mt19937_64 rng(7);
  for (int d = 2; d <= 3; ++d)
    for (int trial = 0; trial < 60; ++trial) {
      IntVec r;
      const CodingSequence x = random_solvable_sequence(d, d == 2 ? 5 : 3, rng, r);
      const IntVec n = x.lengths();
      CHECK(BigInt(static_cast<unsigned long>(count_good_shifts(r, x, n))) == cyclic_determinant(x, n));
    }
}

TEST_CASE("shifting the last jump keeps the good shift count") {
  const CodingSequence x = CodingSequence::from_increments(2, {{{-1, 0}, {0, 1}}, {{0, -1}}});
  const CodingSequence y = shift_last_jump(x, 0, 1);
  CHECK(y.increment(0, 1) == IntVec{-1, 1});
  CHECK(y.increment(0, 2) == IntVec{0, 0});
  const IntVec n = x.lengths();
  CHECK(count_good_shifts({1, 0}, x, n) == count_good_shifts({1, 0}, y, n));
}
