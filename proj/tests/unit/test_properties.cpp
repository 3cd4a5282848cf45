#include <doctest.h>

#include <random>

#include "mtf/branching.hpp"
#include "mtf/coding.hpp"
#include "mtf/cyclic.hpp"
#include "mtf/verify.hpp"

using namespace mtf;

TEST_CASE("random forests: encoding round trip and reduction invariants") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 2;
    const TypedForest f = random_forest(d, 14, 3, rng);
    const CodingSequence x = encode(f);
    const IntVec r = f.root_counts();
    CHECK(smallest_solution(r, x) == f.type_counts());
    CHECK(decode(x, f.root_types(), r) == f);

    const TypedForest fr = reduce(f);
    CHECK(reduce(fr) == fr);
    CHECK(fr.root_types() == f.root_types());
    const CodingSequence xbar = reduce_sequence(x);
    CHECK(xbar.lengths() == fr.type_counts());
    CHECK(endpoint_matrix(xbar, xbar.lengths()) == endpoint_matrix(encode(fr), fr.type_counts()));
  }
}

TEST_CASE("random forests: bfs order is a parent-first permutation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const TypedForest f = random_forest(3, 12, 4, rng);
    const std::vector<int> order = bfs_order(f);
    CHECK(static_cast<int>(order.size()) == f.size());
    std::vector<int> pos(f.size(), -1);
    for (int k = 0; k < f.size(); ++k) pos[order[k]] = k;
    for (int v = 0; v < f.size(); ++v) {
      CHECK(pos[v] >= 0);
      if (f.parent(v) >= 0) CHECK(pos[f.parent(v)] < pos[v]);
    }
  }
}

TEST_CASE("random forests: good shifts survive reduction") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const TypedForest f = random_forest(2, 9, 2, rng);
    const CodingSequence x = encode(f);
    const CodingSequence xbar = reduce_sequence(x);
    const IntVec r = f.root_counts();
    CHECK(count_good_shifts(r, x, x.lengths()) == count_good_shifts(r, xbar, xbar.lengths()));
  }
}

TEST_CASE("matrix-tree identity on random Laplacians") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5);
    IntVec r(d);
    IntMatrix off = IntMatrix::square(d);
    for (int i = 0; i < d; ++i) {
      r[i] = static_cast<int>(rng() % 4);
      for (int j = 0; j < d; ++j)
        if (i != j) off(i, j) = static_cast<int>(rng() % 4);
    }
    if (sum(r) == 0) r[0] = 1;
    const LaplacianMatrix k = LaplacianMatrix::from_offdiagonal(r, off);
    CHECK(k.det_minus() == elementary_forest_sum(k, r));
  }
}

TEST_CASE("progeny marginals never exceed one") {
  const DeskLaws laws = desk_laws();
  ProgenyCalculator calc(laws.critical);
  Rational total = 0;
  for (int n1 = 0; n1 <= 6; ++n1)
    for (int n2 = 0; n2 <= 6; ++n2) {
      if (n1 + n2 == 0) continue;
      const Rational p = calc.marginal({1, 0}, {n1, n2});
      CHECK(p >= 0);
      total += p;
    }
  CHECK(total > 0);
  CHECK(total <= 1);
}
