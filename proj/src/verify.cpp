#include "mtf/verify.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "mtf/cyclic.hpp"
#include "mtf/enumeration.hpp"
#include "mtf/json_io.hpp"
#include "mtf/lagrange.hpp"

namespace mtf {

namespace {

Distribution dist(std::initializer_list<std::pair<IntVec, Rational>> items) {
  Distribution out;
  for (const auto& [z, p] : items) out[z] += p;
  return out;
}

Rational q(long p, long d) { return ratio(p, d); }

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

/// Every root vector of d types with 1 <= sum r <= max_sum.
std::vector<IntVec> root_vectors(int d, int max_sum) {
  std::vector<IntVec> out;
  IntVec r(d, 0);
  while (true) {
    const int s = sum(r);
    if (s >= 1 && s <= max_sum) out.push_back(r);
    int j = 0;
    for (; j < d; ++j) {
      if (++r[j] <= max_sum) break;
      r[j] = 0;
    }
    if (j == d) break;
  }
  return out;
}

/// Every n >= lower (componentwise) with sum n <= cap.
void for_each_size(const IntVec& lower, int cap, const std::function<void(const IntVec&)>& visit) {
  const int d = static_cast<int>(lower.size());
  IntVec n = lower;
  if (sum(n) > cap) return;
  while (true) {
    visit(n);
    int j = 0;
    for (; j < d; ++j) {
      ++n[j];
      if (sum(n) <= cap) break;
      n[j] = lower[j];
    }
    if (j == d) break;
  }
}

/// Every off-diagonal matrix with r_j + sum_{i != j} a_ij <= n_j.
void for_each_offdiag(const IntVec& r, const IntVec& n, const std::function<void(const IntMatrix&)>& visit) {
  const int d = static_cast<int>(r.size());
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) cells.emplace_back(i, j);
  IntMatrix a = IntMatrix::square(d);
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) {
      visit(a);
      return;
    }
    const auto [i, j] = cells[c];
    int col = r[j];
    for (int k = 0; k < d; ++k)
      if (k != j) col += a(k, j);
    for (int v = 0; col + v <= n[j]; ++v) {
      a(i, j) = v;
      rec(c + 1);
    }
    a(i, j) = 0;
  };
  rec(0);
}

std::string str(const Rational& x) { return to_string(x) + " (" + to_decimal(x) + ")"; }

CheckResult make(int criterion, std::string name) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  return r;
}

}  // namespace

DeskLaws desk_laws() {
  DeskLaws l;
  l.critical = OffspringLaw(2, {dist({{{0, 0}, q(1, 2)}, {{1, 1}, q(1, 4)}, {{0, 2}, q(1, 4)}}),
                                dist({{{0, 0}, q(1, 2)}, {{2, 0}, q(1, 4)}, {{1, 1}, q(1, 4)}})});
  l.subcritical = OffspringLaw(
      2, {dist({{{0, 0}, q(1, 2)}, {{1, 0}, q(1, 6)}, {{0, 1}, q(1, 6)}, {{1, 1}, q(1, 6)}}),
          dist({{{0, 0}, q(2, 3)}, {{1, 0}, q(1, 6)}, {{0, 2}, q(1, 6)}})});
  l.reducible = OffspringLaw(2, {dist({{{0, 0}, q(1, 3)}, {{1, 1}, q(1, 3)}, {{0, 2}, q(1, 3)}}),
                                 dist({{{0, 0}, q(1, 2)}, {{0, 2}, q(1, 2)}})});
  const Distribution nu1 = dist({{{0, 0}, q(1, 2)}, {{1, 1}, q(1, 4)}, {{0, 2}, q(1, 4)}});
  l.childless_type2 = OffspringLaw(2, {nu1, dirac({0, 0})});
  l.type2_only = OffspringLaw(2, {nu1, dist({{{0, 0}, q(1, 2)}, {{0, 1}, q(1, 4)}, {{0, 2}, q(1, 4)}})});
  l.binary = OffspringLaw(1, {dist({{{0}, q(1, 2)}, {{2}, q(1, 2)}})});
  return l;
}

DeskLaws load_desk_laws(const std::string& dir) {
  DeskLaws l = desk_laws();
  const std::filesystem::path base(dir);
  l.critical = law_from_json(read_json_file((base / "critical.json").string()));
  l.subcritical = law_from_json(read_json_file((base / "subcritical.json").string()));
  l.reducible = law_from_json(read_json_file((base / "reducible.json").string()));
  return l;
}

void VerifyConfig::set_cap(int cap) {
  forest_cap = cap;
  event_cap = cap;
  enumeration_cap_d2 = cap;
  enumeration_cap_d3 = cap - 1;
  lagrange_cap = cap;
}

void for_each_small_forest(int d, int max_vertices, const std::function<void(const TypedForest&)>& visit) {
  for (int len = 1; len <= max_vertices; ++len) {
    RootTypeSequence c(len, 0);
    while (true) {
      GenerationLimits limits;
      limits.max_total = max_vertices;
      brute_force_generate(d, c, limits, [&](const ForestView& v) { visit(v.materialize()); });
      int k = 0;
      for (; k < len; ++k) {
        if (++c[k] < d) break;
        c[k] = 0;
      }
      if (k == len) break;
    }
  }
}

TypedForest random_forest(int d, int max_vertices, int max_roots, std::mt19937_64& rng) {
  const int roots = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(std::min(max_roots, max_vertices))));
  RootTypeSequence c;
  for (int k = 0; k < roots; ++k) c.push_back(static_cast<Color>(below(rng, d)));
  std::vector<IntVec> offspring;
  int budget = max_vertices - roots;
  std::vector<std::vector<IntVec>> per_tree(roots);
  for (int t = 0; t < roots; ++t) {
    std::vector<Color> q{c[t]};
    for (std::size_t h = 0; h < q.size(); ++h) {
      IntVec z(d, 0);
      const int kids = static_cast<int>(below(rng, static_cast<std::uint64_t>(std::min(budget, 3)) + 1));
      for (int m = 0; m < kids; ++m) ++z[below(rng, d)];
      budget -= kids;
      for (int j = 0; j < d; ++j) q.insert(q.end(), z[j], j);
      per_tree[t].push_back(z);
    }
  }
  for (auto& tree : per_tree) offspring.insert(offspring.end(), tree.begin(), tree.end());
  return TypedForest::from_offspring(d, c, offspring);
}

CodingSequence random_solvable_sequence(int d, int max_length, std::mt19937_64& rng, IntVec& roots) {
  while (true) {
    std::vector<std::vector<IntVec>> inc(d);
    int total = 0;
    for (int i = 0; i < d; ++i) {
      const int len = static_cast<int>(below(rng, static_cast<std::uint64_t>(max_length) + 1));
      total += len;
      for (int m = 0; m < len; ++m) {
        IntVec step(d, 0);
        for (int j = 0; j < d; ++j) {
          const auto u = below(rng, 8);
          if (j == i)
            step[j] = u < 4 ? -1 : u < 6 ? 0 : u == 6 ? 1 : 2;
          else
            step[j] = u < 6 ? 0 : 1;
        }
        inc[i].push_back(step);
      }
    }
    if (total == 0) continue;
    CodingSequence x = CodingSequence::from_increments(d, inc);
    roots.assign(d, 0);
    bool ok = true;
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) roots[j] -= x.value(i, j, x.length(i));
      if (roots[j] < 0) ok = false;
    }
    if (ok && sum(roots) >= 1) return x;
  }
}

std::map<ProgenyEvent, Rational> exhaustive_event_law(const OffspringLaw& law, const RootTypeSequence& c,
                                                      int max_total) {
  const int d = law.types();
  GenerationLimits limits;
  limits.max_total = max_total;
  std::vector<std::vector<IntVec>> options(d);
  for (int i = 0; i < d; ++i)
    for (const auto& [z, p] : law[i]) options[i].push_back(z);
  limits.options = options;
  std::map<ProgenyEvent, Rational> out;
  brute_force_generate(d, c, limits, [&](const ForestView& f) {
    Rational p(1);
    IntVec sizes(d, 0);
    for (std::size_t v = 0; v < f.colors.size(); ++v) {
      p *= mass_at(law[f.colors[v]], f.offspring[v]);
      ++sizes[f.colors[v]];
    }
    out[ProgenyEvent{sizes, f.edge_types()}] += p;
  });
  return out;
}

ChiSquare chi_square_test(const std::vector<std::int64_t>& observed, const std::vector<Rational>& probs,
                          double alpha) {
  if (observed.size() != probs.size() || observed.size() < 2)
    throw InvalidArgument("chi-square needs matching tables with at least two cells");
  std::int64_t total = 0;
  for (auto o : observed) total += o;
  ChiSquare out;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double e = static_cast<double>(total) * to_double(probs[k]);
    const double diff = static_cast<double>(observed[k]) - e;
    out.statistic += diff * diff / e;
  }
  out.dof = static_cast<int>(observed.size()) - 1;
  const boost::math::chi_squared_distribution<double> chi(out.dof);
  out.critical = boost::math::quantile(boost::math::complement(chi, alpha));
  out.passed = out.statistic <= out.critical;
  return out;
}

CheckResult check_bijection(const VerifyConfig& cfg) {
  CheckResult res = make(1, "bijection");
  std::int64_t exhaustive = 0;
  std::int64_t bad = 0;
  std::string first_bad;
  auto check = [&](const TypedForest& f) {
    const CodingSequence x = encode(f);
    const RootTypeSequence c = f.root_types();
    const TypedForest back = decode(x, c, f.root_counts());
    if (!(back == f) || !(encode(back) == x)) {
      if (bad++ == 0) first_bad = forest_to_json(f).dump();
    }
  };
  for_each_small_forest(2, cfg.forest_cap, [&](const TypedForest& f) {
    ++exhaustive;
    check(f);
  });
  std::mt19937_64 rng = Simulator::replica_stream(cfg.seed, 1);
  for (int k = 0; k < cfg.random_forests; ++k) check(random_forest(3, cfg.random_forest_cap, 3, rng));
  res.passed = bad == 0 && exhaustive > 0;
  res.detail = std::to_string(exhaustive) + " exhaustive d=2 forests (<= " + std::to_string(cfg.forest_cap) +
               " vertices), " + std::to_string(cfg.random_forests) + " random d=3 forests (<= " +
               std::to_string(cfg.random_forest_cap) + " vertices), " + std::to_string(bad) + " mismatches";
  if (bad) res.detail += "; first: " + first_bad;
  return res;
}

CheckResult check_cyclic_lemma(const VerifyConfig& cfg) {
  CheckResult res = make(2, "cyclic lemma");
  std::int64_t forests = 0;
  std::int64_t bad = 0;
  for_each_small_forest(2, cfg.forest_cap, [&](const TypedForest& f) {
    ++forests;
    const CodingSequence x = encode(f);
    const IntVec n = f.type_counts();
    if (BigInt(static_cast<unsigned long>(count_good_shifts(f.root_counts(), x, n))) != cyclic_determinant(x, n))
      ++bad;
  });
  std::mt19937_64 rng = Simulator::replica_stream(cfg.seed, 2);
  for (int k = 0; k < cfg.random_sequences; ++k) {
    IntVec r;
    const int d = 1 + k % 3;
    const CodingSequence x = random_solvable_sequence(d, cfg.sequence_length_cap, rng, r);
    const IntVec n = x.lengths();
    if (BigInt(static_cast<unsigned long>(count_good_shifts(r, x, n))) != cyclic_determinant(x, n)) ++bad;
  }
  res.passed = bad == 0;
  res.detail = std::to_string(forests) + " encoded forests, " + std::to_string(cfg.random_sequences) +
               " random sequences (n_i <= " + std::to_string(cfg.sequence_length_cap) + "), " +
               std::to_string(bad) + " mismatches";
  return res;
}

namespace {

/// Columns (r_j, k_ij for i != j) with entries summing to at most cap.
std::vector<std::vector<std::int64_t>> column_choices(int d, int cap) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> v(d, 0);
  while (true) {
    std::int64_t s = 0;
    for (auto x : v) s += x;
    if (s <= cap) out.push_back(v);
    int k = 0;
    for (; k < d; ++k) {
      if (++v[k] <= cap) break;
      v[k] = 0;
    }
    if (k == d) break;
  }
  return out;
}

}  // namespace

CheckResult check_matrix_tree(const VerifyConfig& cfg) {
  CheckResult res = make(3, "matrix-tree");
  std::int64_t cases = 0;
  std::int64_t bad = 0;
  bool generators_agree = true;
  for (int d = 1; d <= std::max(cfg.matrix_tree_types, 6); ++d)
    if (elementary_forests_by_filter(d) != elementary_forests_by_growth(d)) generators_agree = false;
  const auto d2 = enumerate_elementary_forests(2);
  const bool d2_ok = d2.size() == 3 && d2 == std::vector<ElementaryForestCode>{{0, 0}, {0, 1}, {2, 0}};

  for (int d = 1; d <= cfg.matrix_tree_types; ++d) {
    const auto codes = enumerate_elementary_forests(d);
    const auto cols = column_choices(d, cfg.matrix_tree_entry_cap);
    std::vector<std::size_t> pick(d, 0);
    Matrix<std::int64_t> k(d, d);
    std::vector<std::int64_t> r(d);
    while (true) {
      for (int j = 0; j < d; ++j) {
        const auto& col = cols[pick[j]];
        r[j] = col[0];
        std::int64_t diag = col[0];
        int slot = 1;
        for (int i = 0; i < d; ++i) {
          if (i == j) continue;
          k(i, j) = col[slot++];
          diag += k(i, j);
        }
        k(j, j) = -diag;
      }
      Matrix<std::int64_t> neg(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) neg(i, j) = -k(i, j);
      ++cases;
      if (determinant(neg) != elementary_forest_sum<std::int64_t>(k, r, codes)) ++bad;
      int j = 0;
      for (; j < d; ++j) {
        if (++pick[j] < cols.size()) break;
        pick[j] = 0;
      }
      if (j == d) break;
    }
  }
  res.passed = bad == 0 && generators_agree && d2_ok;
  res.detail = std::to_string(cases) + " (K, r) pairs with d <= " + std::to_string(cfg.matrix_tree_types) +
               " and |k_ij| <= " + std::to_string(cfg.matrix_tree_entry_cap) + ", " + std::to_string(bad) +
               " mismatches; |D| = " + std::to_string(d2.size()) + " for d=2; D generators " +
               (generators_agree ? "agree" : "DISAGREE");
  return res;
}

CheckResult check_progeny_law(const VerifyConfig& cfg, const DeskLaws& laws) {
  CheckResult res = make(4, "progeny law vs brute force");
  std::int64_t events = 0;
  std::int64_t positive = 0;
  std::int64_t bad = 0;
  std::string first_bad;
  const std::vector<std::pair<std::string, const OffspringLaw*>> list{
      {"critical", &laws.critical}, {"subcritical", &laws.subcritical}, {"reducible", &laws.reducible}};
  for (const auto& [name, law] : list) {
    ProgenyCalculator calc(*law);
    for (const IntVec& r : root_vectors(law->types(), 2)) {
      const auto brute = exhaustive_event_law(*law, canonical_roots(r), cfg.event_cap);
      Rational covered(0);
      for_each_size(r, cfg.event_cap, [&](const IntVec& n) {
        for_each_offdiag(r, n, [&](const IntMatrix& a) {
          const Rational exact = calc.joint(r, n, a);
          auto it = brute.find(ProgenyEvent{n, a});
          const Rational oracle = it == brute.end() ? Rational(0) : it->second;
          ++events;
          if (exact != 0) ++positive;
          covered += oracle;
          if (exact != oracle && bad++ == 0)
            first_bad = name + " r=" + format_int_list(r) + " n=" + format_int_list(n) + ": " + to_string(exact) +
                        " vs " + to_string(oracle);
        });
      });
      Rational total(0);
      for (const auto& [e, p] : brute) total += p;
      if (total != covered && bad++ == 0) first_bad = name + ": brute-force events outside the event grid";
    }
  }
  res.passed = bad == 0;
  res.detail = std::to_string(events) + " events (sum n <= " + std::to_string(cfg.event_cap) +
               ", 3 laws, 1 <= |r| <= 2), " + std::to_string(positive) + " with positive mass, " +
               std::to_string(bad) + " mismatches";
  if (bad) res.detail += "; first: " + first_bad;
  return res;
}

CheckResult check_otter_dwass(const VerifyConfig& cfg, const DeskLaws& laws) {
  CheckResult res = make(5, "Otter-Dwass");
  const Distribution& nu = laws.binary[0];
  const Rational p3 = otter_dwass_1type(nu, 1, 3);
  const Rational p3_main = progeny_law(laws.binary, {1}, {3}, IntMatrix::square(1));
  bool ok = p3 == ratio(1, 8) && p3_main == p3;
  std::int64_t compared = 0;
  for (int k = 1; k <= 2; ++k) {
    const auto brute = exhaustive_event_law(laws.binary, RootTypeSequence(k, 0), cfg.otter_dwass_cap);
    for (int n = k; n <= cfg.otter_dwass_cap; ++n) {
      auto it = brute.find(ProgenyEvent{{n}, IntMatrix::square(1)});
      const Rational oracle = it == brute.end() ? Rational(0) : it->second;
      ++compared;
      if (otter_dwass_1type(nu, k, n) != oracle || marginal_progeny_law(laws.binary, {k}, {n}) != oracle)
        ok = false;
    }
  }
  res.passed = ok;
  res.detail = "P_1(O=3) = " + str(p3) + ", " + std::to_string(compared) + " values for k in {1,2}, n <= " +
               std::to_string(cfg.otter_dwass_cap) + (ok ? " agree" : " DISAGREE");
  return res;
}

CheckResult check_reducible(const VerifyConfig& cfg, const DeskLaws& laws) {
  CheckResult res = make(6, "reducible formulas");
  bool ok = reducible_regime(laws.childless_type2) == ReducibleRegime::childless_type2 &&
            reducible_regime(laws.type2_only) == ReducibleRegime::type2_only_type2;
  std::int64_t compared = 0;
  std::int64_t bad = 0;
  for (const OffspringLaw* law : {&laws.childless_type2, &laws.type2_only}) {
    const bool sum_form = reducible_regime(*law) == ReducibleRegime::type2_only_type2;
    for (int r1 = 1; r1 <= 2; ++r1) {
      const auto brute = exhaustive_event_law(*law, RootTypeSequence(r1, 0), cfg.event_cap);
      std::map<IntVec, Rational> marginal;
      for (const auto& [e, p] : brute) marginal[e.sizes] += p;
      for_each_size({r1, sum_form ? 1 : 0}, cfg.event_cap, [&](const IntVec& n) {
        auto it = marginal.find(n);
        const Rational oracle = it == marginal.end() ? Rational(0) : it->second;
        ++compared;
        if (reducible_2type_laws(*law, r1, n[0], n[1]) != oracle) ++bad;
      });
    }
  }
  res.passed = ok && bad == 0;
  res.detail = std::to_string(compared) + " marginals over both regimes (sum n <= " + std::to_string(cfg.event_cap) +
               "), " + std::to_string(bad) + " mismatches" + (ok ? "" : "; regime detection failed");
  return res;
}

namespace {

struct LabeledBucket {
  std::int64_t total = 0;
  std::int64_t injective = 0;
  std::map<IndegreeTuple, std::int64_t> by_tuple;
  std::map<Census, std::int64_t> by_census;
};

struct PlaneBucket {
  std::int64_t total = 0;
  Rational fiber;
  std::map<Census, std::int64_t> by_census;
};

using SigKey = std::pair<IntVec, IntMatrix>;

struct EnumerationTally {
  std::int64_t signatures = 0;
  std::int64_t comparisons = 0;
  std::int64_t bad = 0;
  std::string first_bad;

  void expect(const BigInt& formula, const BigInt& oracle, const std::string& what) {
    ++comparisons;
    if (formula != oracle && bad++ == 0) first_bad = what + ": " + to_string(formula) + " vs " + to_string(oracle);
  }
};

void enumerate_sizes(const IntVec& n, EnumerationTally& tally) {
  const int d = static_cast<int>(n.size());
  std::map<SigKey, LabeledBucket> labeled;
  for_each_labeled_forest(n, [&](const LabeledView& f) {
    LabeledBucket& b = labeled[{f.root_counts(), f.edge_types()}];
    const IndegreeTuple t = f.indegree();
    ++b.total;
    bool inj = true;
    for (const auto& vs : t)
      for (const IntVec& u : vs)
        for (int x : u)
          if (x > 1) inj = false;
    if (inj) ++b.injective;
    ++b.by_census[census_of(t)];
    ++b.by_tuple[t];
  });
  std::map<SigKey, PlaneBucket> plane;
  IntVec r(d, 0);
  while (true) {
    if (sum(r) >= 1) {
      GenerationLimits limits;
      limits.sizes = n;
      brute_force_generate(d, canonical_roots(r), limits, [&](const ForestView& f) {
        PlaneBucket& b = plane[{r, f.edge_types()}];
        ++b.total;
        b.fiber += labeled_fiber(n, r, f.offspring);
        ++b.by_census[f.census()];
      });
    }
    int j = 0;
    for (; j < d; ++j) {
      if (++r[j] <= n[j]) break;
      r[j] = 0;
    }
    if (j == d) break;
  }

  std::int64_t labeled_seen = 0;
  std::int64_t plane_seen = 0;
  for (const Signature& sig : admissible_signatures(n)) {
    ++tally.signatures;
    const std::string where = "r=" + format_int_list(sig.roots) + " n=" + format_int_list(n);
    IntMatrix key = sig.offdiag;
    const auto lit = labeled.find({sig.roots, key});
    const auto pit = plane.find({sig.roots, key});
    const LabeledBucket lb = lit == labeled.end() ? LabeledBucket{} : lit->second;
    const PlaneBucket pb = pit == plane.end() ? PlaneBucket{} : pit->second;
    labeled_seen += lb.total;
    plane_seen += pb.total;
    if (pb.fiber.get_den() != 1) tally.expect(BigInt(-1), BigInt(0), "fiber sum not integral " + where);

    tally.expect(count_plane_forests(sig), BigInt(static_cast<long>(pb.total)), "plane " + where);
    tally.expect(count_labeled_by_edge_types(sig), BigInt(static_cast<long>(lb.total)), "edge types " + where);
    tally.expect(count_labeled_by_edge_types(sig), pb.fiber.get_num(), "edge types (fiber) " + where);
    tally.expect(count_injective(sig), BigInt(static_cast<long>(lb.injective)), "injective " + where);

    std::int64_t tuple_sum = 0;
    for_each_indegree_tuple(sig, [&](const IndegreeTuple& c) {
      auto it = lb.by_tuple.find(c);
      const std::int64_t oracle = it == lb.by_tuple.end() ? 0 : it->second;
      tuple_sum += oracle;
      tally.expect(count_labeled_by_indegree(sig, c), BigInt(static_cast<long>(oracle)), "indegree " + where);
    });
    tally.expect(BigInt(static_cast<long>(tuple_sum)), BigInt(static_cast<long>(lb.total)),
                 "indegree tuples cover the class " + where);

    std::int64_t lcensus_sum = 0;
    std::int64_t pcensus_sum = 0;
    for_each_census(sig, [&](const Census& census) {
      auto lc = lb.by_census.find(census);
      auto pc = pb.by_census.find(census);
      const std::int64_t lo = lc == lb.by_census.end() ? 0 : lc->second;
      const std::int64_t po = pc == pb.by_census.end() ? 0 : pc->second;
      lcensus_sum += lo;
      pcensus_sum += po;
      tally.expect(count_labeled_by_census(sig, census), BigInt(static_cast<long>(lo)), "labeled census " + where);
      tally.expect(count_unlabeled_by_census(sig, census), BigInt(static_cast<long>(po)),
                   "unlabeled census " + where);
    });
    tally.expect(BigInt(static_cast<long>(lcensus_sum)), BigInt(static_cast<long>(lb.total)),
                 "censuses cover the labeled class " + where);
    tally.expect(BigInt(static_cast<long>(pcensus_sum)), BigInt(static_cast<long>(pb.total)),
                 "censuses cover the plane class " + where);
  }
  std::int64_t labeled_total = 0;
  for (const auto& [k, b] : labeled) labeled_total += b.total;
  std::int64_t plane_total = 0;
  for (const auto& [k, b] : plane) plane_total += b.total;
  tally.expect(BigInt(static_cast<long>(labeled_seen)), BigInt(static_cast<long>(labeled_total)),
               "admissible signatures cover all labeled forests n=" + format_int_list(n));
  tally.expect(BigInt(static_cast<long>(plane_seen)), BigInt(static_cast<long>(plane_total)),
               "admissible signatures cover all plane forests n=" + format_int_list(n));
}

void enumerate_degrees(int n, EnumerationTally& tally) {
  std::map<IntVec, std::int64_t> by_degrees;
  for_each_labeled_forest({n}, [&](const LabeledView& f) {
    const IndegreeTuple t = f.indegree();
    IntVec c;
    for (const IntVec& u : t[0]) c.push_back(u[0]);
    ++by_degrees[c];
  });
  IntVec c(n, 0);
  while (true) {
    auto it = by_degrees.find(c);
    const std::int64_t oracle = it == by_degrees.end() ? 0 : it->second;
    tally.expect(count_single_type_by_degrees(c), BigInt(static_cast<long>(oracle)),
                 "degrees c=" + format_int_list(c));
    int j = 0;
    for (; j < n; ++j) {
      if (++c[j] < n) break;
      c[j] = 0;
    }
    if (j == n) break;
  }
}

}  // namespace

CheckResult check_enumeration(const VerifyConfig& cfg) {
  CheckResult res = make(7, "enumeration formulas");
  EnumerationTally tally;
  const Signature single{{1}, {3}, IntMatrix::square(1)};
  const BigInt single_formula = count_plane_forests(single);
  const BigInt single_brute = brute_force_plane(single);
  tally.expect(single_formula, BigInt(2), "single-type r=1 n=3 formula");
  tally.expect(single_brute, BigInt(2), "single-type r=1 n=3 brute force");
  for_each_size({1, 1}, cfg.enumeration_cap_d2, [&](const IntVec& n) { enumerate_sizes(n, tally); });
  for_each_size({1, 1, 1}, cfg.enumeration_cap_d3, [&](const IntVec& n) { enumerate_sizes(n, tally); });
  for (int n = 1; n <= cfg.enumeration_cap_d2; ++n) enumerate_degrees(n, tally);
  res.passed = tally.bad == 0;
  res.detail = std::to_string(tally.signatures) + " signatures (d=2 sum n <= " +
               std::to_string(cfg.enumeration_cap_d2) + ", d=3 sum n <= " + std::to_string(cfg.enumeration_cap_d3) +
               "), " + std::to_string(tally.comparisons) + " comparisons, " + std::to_string(tally.bad) +
               " mismatches; r=1 n=3 gives " + to_string(single_formula) + " plane trees";
  if (tally.bad) res.detail += "; first: " + tally.first_bad;
  return res;
}

CheckResult check_lagrange(const VerifyConfig& cfg, const DeskLaws& laws) {
  CheckResult res = make(8, "Lagrange-Good");
  const int cap = cfg.lagrange_cap;
  std::int64_t compared = 0;
  std::int64_t bad = 0;
  std::string first_bad;
  for (const OffspringLaw* law : {&laws.critical, &laws.subcritical, &laws.reducible}) {
    const int d = law->types();
    std::vector<MultiSeries> f;
    for (int i = 0; i < d; ++i) f.push_back(series_from_law((*law)[i], d, cap));
    const std::vector<MultiSeries> g = solve_fixed_point(f, cap);
    ProgenyCalculator calc(*law);
    for (const IntVec& r : root_vectors(d, 2)) {
      MultiSeries lhs_series = MultiSeries::constant(d, cap, Rational(1));
      for (int i = 0; i < d; ++i) lhs_series = lhs_series * g[i].pow(r[i]);
      const MultiSeries f0 = MultiSeries::monomial(d, cap, r);
      for_each_size(IntVec(d, 1), cap, [&](const IntVec& n) {
        const Rational lhs = lhs_series.coeff(n);
        const Rational rhs = lagrange_good_rhs(f0, f, n);
        const Rational prob = calc.marginal(r, n);
        ++compared;
        if ((lhs != rhs || rhs != prob) && bad++ == 0)
          first_bad = "r=" + format_int_list(r) + " n=" + format_int_list(n) + ": " + to_string(lhs) + ", " +
                      to_string(rhs) + ", " + to_string(prob);
      });
    }
  }
  // d = 1: [z^n] h^k = (k/n) [z^{n-k}] f^n on the binary law.
  const int cap1 = cfg.otter_dwass_cap;
  const MultiSeries f1 = series_from_law(laws.binary[0], 1, cap1);
  const MultiSeries h = solve_fixed_point({f1}, cap1).front();
  std::int64_t scalar = 0;
  for (int k = 1; k <= 3; ++k) {
    const MultiSeries hk = h.pow(k);
    for (int n = k; n <= cap1; ++n) {
      const Rational lhs = hk.coeff({n});
      const Rational classical = ratio(k, n) * f1.pow(n).coeff({n - k});
      const Rational rhs = lagrange_good_rhs(MultiSeries::monomial(1, cap1, {k}), {f1}, {n});
      ++scalar;
      if ((lhs != classical || lhs != rhs || lhs != otter_dwass_1type(laws.binary[0], k, n)) && bad++ == 0)
        first_bad = "d=1 k=" + std::to_string(k) + " n=" + std::to_string(n);
    }
  }
  res.passed = bad == 0;
  res.detail = std::to_string(compared) + " three-way comparisons (sum n <= " + std::to_string(cap) + "), " +
               std::to_string(scalar) + " single-variable coefficients, " + std::to_string(bad) + " mismatches";
  if (bad) res.detail += "; first: " + first_bad;
  return res;
}

CheckResult check_simulation(const VerifyConfig& cfg, const DeskLaws& laws) {
  CheckResult res = make(9, "simulation");
  bool ok = true;
  std::ostringstream detail;
  const std::vector<std::pair<std::string, const OffspringLaw*>> list{
      {"critical", &laws.critical}, {"subcritical", &laws.subcritical}, {"reducible", &laws.reducible}};
  const RootTypeSequence c{0};
  const IntVec r = root_counts(2, c);
  const double replicas = static_cast<double>(cfg.replicas);
  std::uint64_t stream = 100;
  for (const auto& [name, law] : list) {
    const EventTable table =
        simulate_events(*law, c, cfg.seed + stream++, cfg.replicas, cfg.simulation_event_cap, cfg.jobs);
    ProgenyCalculator calc(*law);
    int tested = 0;
    int failed = 0;
    double worst = 0;
    Rational covered(0);
    auto test = [&](const Rational& p, std::int64_t count) {
      const double pd = to_double(p);
      if (pd < 1e-3) return;
      ++tested;
      const double se = std::sqrt(pd * (1 - pd) / replicas);
      const double z = std::abs(static_cast<double>(count) / replicas - pd) / se;
      worst = std::max(worst, z);
      if (z > 4) ++failed;
    };
    for_each_size(IntVec(2, 0), cfg.simulation_event_cap, [&](const IntVec& n) {
      for (int j = 0; j < 2; ++j)
        if (n[j] < r[j]) return;
      for_each_offdiag(r, n, [&](const IntMatrix& a) {
        const Rational p = calc.joint(r, n, a);
        covered += p;
        auto it = table.counts.find(ProgenyEvent{n, a});
        test(p, it == table.counts.end() ? 0 : it->second);
      });
    });
    test(Rational(1) - covered, table.truncated);

    std::string walk;
    try {
      const WalkTally tally = walk_increment_tally(*law, c, cfg.seed + stream++, cfg.walk_steps, 200'000'000);
      for (int i = 0; i < law->types(); ++i) {
        if (!tally.reachable[i] || (*law)[i].size() < 2) continue;
        std::vector<Rational> probs;
        for (const auto& [z, p] : (*law)[i]) probs.push_back(p);
        const ChiSquare chi = chi_square_test(tally.counts[i], probs, 1e-3);
        if (!chi.passed) ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, " chi2[%d]=%.3f/%.3f (dof %d)", i + 1, chi.statistic, chi.critical, chi.dof);
        walk += buf;
      }
    } catch (const CapExceeded& e) {
      ok = false;
      walk = std::string(" walk: ") + e.what();
    }
    if (failed) ok = false;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s: %d/%d events within 4 SE (max %.2f SE);", name.c_str(), tested - failed,
                  tested, worst);
    detail << (name == "critical" ? "" : " ") << buf << walk << ";";
  }
  res.passed = ok;
  res.detail = std::to_string(cfg.replicas) + " replicas, " + std::to_string(cfg.walk_steps) + " walk steps per type; " +
               detail.str();
  return res;
}

std::vector<CheckEntry> all_checks() {
  return {
      {1, [](const VerifyConfig& c, const DeskLaws&) { return check_bijection(c); }},
      {2, [](const VerifyConfig& c, const DeskLaws&) { return check_cyclic_lemma(c); }},
      {3, [](const VerifyConfig& c, const DeskLaws&) { return check_matrix_tree(c); }},
      {4, check_progeny_law},
      {5, check_otter_dwass},
      {6, check_reducible},
      {7, [](const VerifyConfig& c, const DeskLaws&) { return check_enumeration(c); }},
      {8, check_lagrange},
      {9, check_simulation},
  };
}

std::vector<CheckResult> run_verify(const VerifyConfig& cfg, const DeskLaws& laws) {
  std::vector<CheckResult> out;
  for (const CheckEntry& e : all_checks()) {
    if (!cfg.only.empty() && std::find(cfg.only.begin(), cfg.only.end(), e.criterion) == cfg.only.end()) continue;
    try {
      out.push_back(e.run(cfg, laws));
    } catch (const std::exception& ex) {
      CheckResult r;
      r.criterion = e.criterion;
      r.name = "criterion " + std::to_string(e.criterion);
      r.detail = std::string("error: ") + ex.what();
      out.push_back(r);
    }
  }
  return out;
}

std::string render_report(const VerifyConfig& cfg, const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os << "mtf verify\n";
  os << "config: seed=" << cfg.seed << " forest_cap=" << cfg.forest_cap << " random_forests=" << cfg.random_forests
     << " random_sequences=" << cfg.random_sequences << " matrix_tree=d<=" << cfg.matrix_tree_types << ",|k|<="
     << cfg.matrix_tree_entry_cap << " event_cap=" << cfg.event_cap << " otter_dwass_cap=" << cfg.otter_dwass_cap
     << " enumeration_cap=" << cfg.enumeration_cap_d2 << "/" << cfg.enumeration_cap_d3
     << " lagrange_cap=" << cfg.lagrange_cap << " replicas=" << cfg.replicas
     << " simulation_event_cap=" << cfg.simulation_event_cap << " walk_steps=" << cfg.walk_steps << "\n";
  int passed = 0;
  for (const CheckResult& r : results) {
    if (r.passed) ++passed;
    os << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.criterion << " " << r.name << ": " << r.detail << "\n";
  }
  os << passed << "/" << results.size() << " checks passed\n";
  return os.str();
}

}  // namespace mtf
