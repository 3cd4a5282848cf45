#include <doctest.h>

#include "mtf/lagrange.hpp"
#include "mtf/verify.hpp"

using namespace mtf;

namespace {

std::vector<MultiSeries> law_series(const OffspringLaw& law, int order) {
  std::vector<MultiSeries> f;
  for (int i = 0; i < law.types(); ++i) f.push_back(series_from_law(law[i], law.types(), order));
  return f;
}

}  // namespace

TEST_CASE("series arithmetic") {
  const MultiSeries x = MultiSeries::variable(2, 4, 0);
  const MultiSeries y = MultiSeries::variable(2, 4, 1);
  const MultiSeries s = (x + y).pow(3);
  CHECK(s.coeff({2, 1}) == 3);
  CHECK(s.coeff({0, 3}) == 1);
  CHECK((x + y).pow(5).terms().empty());
  CHECK(s.derivative(0).coeff({1, 1}) == 6);
  CHECK((s * Rational(1, 3)).coeff({1, 2}) == 1);
  CHECK(MultiSeries::constant(2, 4, 2).pow(0) == MultiSeries::constant(2, 4, 1));
  // (1 + x)(1 - x + x^2 - ...) = 1.
  MultiSeries inv(1, 5);
  for (int k = 0; k <= 5; ++k) inv.add_term({k}, k % 2 ? -1 : 1);
  CHECK((MultiSeries::constant(1, 5, 1) + MultiSeries::variable(1, 5, 0)) * inv == MultiSeries::constant(1, 5, 1));
}

TEST_CASE("composition") {
  // h(u, v) = u v at u = x + y, v = x.
  const MultiSeries x = MultiSeries::variable(2, 3, 0);
  const MultiSeries y = MultiSeries::variable(2, 3, 1);
  const MultiSeries h = MultiSeries::monomial(2, 3, {1, 1});
  const MultiSeries c = h.compose({x + y, x});
  CHECK(c.coeff({2, 0}) == 1);
  CHECK(c.coeff({1, 1}) == 1);
  CHECK(c.coeff({0, 2}) == 0);
}

TEST_CASE("fixed point of constant functions") {
  const std::vector<MultiSeries> f{MultiSeries::constant(2, 5, 1), MultiSeries::constant(2, 5, 1)};
  const std::vector<MultiSeries> g = solve_fixed_point(f, 5);
  CHECK(g[0] == MultiSeries::variable(2, 5, 0));
  CHECK(g[1] == MultiSeries::variable(2, 5, 1));
}

TEST_CASE("fixed point of the binary law") {
  const std::vector<MultiSeries> g = solve_fixed_point(law_series(desk_laws().binary, 7), 7);
  CHECK(g[0].coeff({1}) == Rational(1, 2));
  CHECK(g[0].coeff({3}) == Rational(1, 8));
  CHECK(g[0].coeff({5}) == Rational(1, 16));
  CHECK(g[0].coeff({2}) == 0);
}

TEST_CASE("fixed point rejects f(0) = 0") {
  const std::vector<MultiSeries> f{MultiSeries::variable(1, 4, 0)};
  CHECK_THROWS_AS(solve_fixed_point(f, 4), InvalidArgument);
}

TEST_CASE("truncation does not change lower coefficients") {
  const std::vector<MultiSeries> f = law_series(desk_laws().critical, 7);
  const std::vector<MultiSeries> hi = solve_fixed_point(f, 7);
  std::vector<MultiSeries> f_lo;
  for (const MultiSeries& s : f) f_lo.push_back(s.truncated(4));
  const std::vector<MultiSeries> lo = solve_fixed_point(f_lo, 4);
  for (int i = 0; i < 2; ++i) CHECK(hi[i].truncated(4) == lo[i]);
}

TEST_CASE("graph derivative") {
  // g_0 = x y, g_1 = g_2 = 1: only the code with both types as roots survives.
  std::vector<MultiSeries> g{MultiSeries::monomial(2, 4, {1, 1}), MultiSeries::constant(2, 4, 1),
                             MultiSeries::constant(2, 4, 1)};
  CHECK(graph_derivative(g, {0, 0}) == MultiSeries::constant(2, 4, 1));
  CHECK(graph_derivative(g, {0, 1}).terms().empty());
  // j = (0, 1): d/dx g_0 times d/dy g_1.
  g[1] = MultiSeries::monomial(2, 4, {0, 2});
  const MultiSeries h = graph_derivative(g, {0, 1});
  CHECK(h.coeff({0, 2}) == 2);
  CHECK_THROWS_AS(graph_derivative(g, {2, 1}), InvalidArgument);
}

TEST_CASE("both sides of the multivariate inversion agree") {
  const DeskLaws laws = desk_laws();
  for (const OffspringLaw* law : {&laws.critical, &laws.subcritical}) {
    const std::vector<MultiSeries> f = law_series(*law, 6);
    for (const IntVec& r : {IntVec{1, 0}, IntVec{0, 1}, IntVec{1, 1}})
      for (int n1 = 1; n1 <= 3; ++n1)
        for (int n2 = 1; n2 <= 3; ++n2) {
          const IntVec n{n1, n2};
          const MultiSeries f0 = MultiSeries::monomial(2, 6, r);
          const Rational lhs = lagrange_good_lhs(f, r, n);
          CHECK(lhs == lagrange_good_rhs(f0, f, n));
          CHECK(lhs == marginal_progeny_law(*law, r, n));
        }
  }
}

TEST_CASE("inversion input checks") {
  const std::vector<MultiSeries> f = law_series(desk_laws().critical, 5);
  CHECK_THROWS_AS(lagrange_good_rhs(MultiSeries::monomial(2, 5, {1, 0}), f, {0, 2}), InvalidArgument);
  CHECK_THROWS_AS(lagrange_good_rhs(MultiSeries::constant(2, 5, 1), f, {1, 1}), InvalidArgument);
}
