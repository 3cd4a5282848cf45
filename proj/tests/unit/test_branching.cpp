#include <doctest.h>

#include "mtf/branching.hpp"
#include "mtf/verify.hpp"

using namespace mtf;

TEST_CASE("convolution powers") {
  const Distribution nu{{{0}, Rational(1, 2)}, {{2}, Rational(1, 2)}};
  CHECK(convolution_power(nu, 0, 1) == dirac({0}));
  CHECK(mass_at(convolution_power(nu, 3, 1), {2}) == Rational(3, 8));
  CHECK(mass_at(convolution_power(nu, 3, 1), {6}) == Rational(1, 8));
  CHECK(convolution_power(dirac({1, 2}), 3, 2) == dirac({3, 6}));
  CHECK_THROWS_AS(convolution_power(nu, 40, 1, 4), CapExceeded);
}

TEST_CASE("law validation") {
  CHECK_THROWS(OffspringLaw(1, {Distribution{{{0}, Rational(1, 2)}}}));
  CHECK_THROWS(OffspringLaw(1, {Distribution{{{0}, Rational(3, 2)}, {{1}, Rational(-1, 2)}}}));
}

TEST_CASE("classification") {
  const OffspringLaw zero(2, {dirac({0, 0}), dirac({0, 0})});
  CHECK(classify(zero).regime == Regime::subcritical);

  const OffspringLaw swap(2, {dirac({0, 1}), dirac({1, 0})});
  const Classification s = classify(swap);
  CHECK(s.irreducible);
  CHECK(s.degenerate);
  CHECK(s.regime == Regime::critical);
  CHECK(s.rho_lower <= 1);
  CHECK(s.rho_upper >= 1);

  const DeskLaws laws = desk_laws();
  const Classification c = classify(laws.critical);
  CHECK(c.irreducible);
  CHECK(!c.degenerate);
  CHECK(c.regime == Regime::critical);
  CHECK(c.mean(0, 1) == Rational(3, 4));

  const Classification sub = classify(laws.subcritical);
  CHECK(sub.irreducible);
  CHECK(sub.regime == Regime::subcritical);
  CHECK(sub.rho_upper < 1);

  CHECK(!classify(laws.reducible).irreducible);
}

TEST_CASE("single-type total progeny") {
  const Distribution nu{{{0}, Rational(1, 2)}, {{2}, Rational(1, 2)}};
  CHECK(otter_dwass_1type(nu, 1, 3) == Rational(1, 8));
  CHECK(otter_dwass_1type(nu, 1, 1) == Rational(1, 2));
  CHECK(otter_dwass_1type(nu, 1, 2) == 0);
  const OffspringLaw binary = desk_laws().binary;
  for (int n = 1; n <= 9; ++n) CHECK(marginal_progeny_law(binary, {1}, {n}) == otter_dwass_1type(nu, 1, n));
}

TEST_CASE("progeny law of the deterministic chain") {
  const OffspringLaw chain(2, {dirac({0, 1}), dirac({0, 0})});
  IntMatrix off = IntMatrix::square(2);
  off(0, 1) = 1;
  CHECK(progeny_law(chain, {1, 0}, {1, 1}, off) == 1);
  CHECK(progeny_law(chain, {1, 0}, {1, 1}, IntMatrix::square(2)) == 0);
  CHECK(marginal_progeny_law(chain, {2, 0}, {2, 2}) == 1);
}

TEST_CASE("progeny law matches exhaustive enumeration") {
  const DeskLaws laws = desk_laws();
  for (const OffspringLaw* law : {&laws.critical, &laws.subcritical, &laws.reducible}) {
    for (const RootTypeSequence& c : {RootTypeSequence{0}, RootTypeSequence{0, 1}}) {
      const auto exact = exhaustive_event_law(*law, c, 6);
      CHECK(!exact.empty());
      const IntVec r = root_counts(2, c);
      for (const auto& [event, p] : exact) CHECK(progeny_law(*law, r, event.sizes, event.offdiag) == p);
    }
  }
}

TEST_CASE("progeny event checks") {
  CHECK_THROWS(check_progeny_event({0, 0}, {1, 1}, IntMatrix::square(2)));
  CHECK_THROWS(check_progeny_event({-1, 1}, {1, 1}, IntMatrix::square(2)));
  IntMatrix off = IntMatrix::square(2);
  off(0, 1) = 3;
  CHECK_THROWS(check_progeny_event({1, 0}, {1, 2}, off));
}

TEST_CASE("reducible formulas agree with the general law") {
  const DeskLaws laws = desk_laws();
  CHECK(reducible_regime(laws.childless_type2) == ReducibleRegime::childless_type2);
  CHECK(reducible_regime(laws.type2_only) == ReducibleRegime::type2_only_type2);
  for (const OffspringLaw* law : {&laws.childless_type2, &laws.type2_only})
    for (int r1 = 1; r1 <= 2; ++r1)
      for (int n1 = r1; n1 <= 4; ++n1)
        for (int n2 = 1; n2 <= 4; ++n2)
          CHECK(reducible_2type_laws(*law, r1, n1, n2) == marginal_progeny_law(*law, {r1, 0}, {n1, n2}));
}

TEST_CASE("simulation is reproducible and independent of the thread count") {
  const OffspringLaw law = desk_laws().critical;
  const EventTable a = simulate_events(law, {0, 1}, 11, 2000, 20, 1);
  const EventTable b = simulate_events(law, {0, 1}, 11, 2000, 20, 3);
  CHECK(a.counts == b.counts);
  CHECK(a.truncated == b.truncated);
  CHECK(a.replicas == 2000);
  std::int64_t total = a.truncated;
  for (const auto& [event, n] : a.counts) total += n;
  CHECK(total == 2000);

  const SimulationResult s = simulate_forest(law, {0}, 5, 1000);
  const SimulationResult t = simulate_forest(law, {0}, 5, 1000);
  CHECK(s.forest == t.forest);
}

TEST_CASE("simulated forests respect the root sequence and the cap") {
  const OffspringLaw law = desk_laws().critical;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SimulationResult s = simulate_forest(law, {1, 0}, seed, 15);
    if (s.truncated) {
      CHECK(!s.forest.has_value());
      continue;
    }
    REQUIRE(s.forest.has_value());
    CHECK(s.forest->root_types() == RootTypeSequence{1, 0});
    CHECK(s.forest->size() <= 15);
    CHECK(s.vertices == s.forest->size());
  }
}

TEST_CASE("walk tally") {
  const OffspringLaw chain(2, {dirac({0, 1}), dirac({0, 0})});
  const WalkTally w = walk_increment_tally(chain, {0}, 3, 10, 1000);
  CHECK(w.reachable == std::vector<bool>{true, true});
  CHECK(w.counts[0] == std::vector<std::int64_t>{10});
  CHECK(w.counts[1] == std::vector<std::int64_t>{10});

  const OffspringLaw law = desk_laws().critical;
  const WalkTally t = walk_increment_tally(law, {0}, 9, 500, 1000000);
  for (int i = 0; i < 2; ++i) {
    std::int64_t steps = 0;
    for (std::int64_t n : t.counts[i]) steps += n;
    CHECK(steps == 500);
  }
  const WalkTally u = walk_increment_tally(law, {0}, 9, 500, 1000000);
  CHECK(t.counts == u.counts);

  const OffspringLaw isolated(2, {dirac({0, 0}), dirac({0, 0})});
  const WalkTally v = walk_increment_tally(isolated, {0}, 1, 5, 100);
  CHECK(v.reachable == std::vector<bool>{true, false});
  CHECK_THROWS_AS(walk_increment_tally(law, {0}, 9, 500, 10), CapExceeded);
}
