#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mtf/branching.hpp"
#include "mtf/coding.hpp"
#include "mtf/forest.hpp"

namespace mtf {

/// Small hand-checkable laws used throughout the oracle suite.
struct DeskLaws {
  OffspringLaw critical;
  OffspringLaw subcritical;
  OffspringLaw reducible;
  /// Type 2 childless: the first reducible formula applies.
  OffspringLaw childless_type2;
  /// Type 2 bears only type 2: the convolution-sum formula applies.
  OffspringLaw type2_only;
  /// d = 1, nu(0) = nu(2) = 1/2.
  OffspringLaw binary;
};

DeskLaws desk_laws();
/// Reads critical.json, subcritical.json and reducible.json from `dir`,
/// keeping the built-in laws for the rest.
DeskLaws load_desk_laws(const std::string& dir);

struct VerifyConfig {
  std::uint64_t seed = 20240917;
  int jobs = 1;
  int forest_cap = 6;
  int random_forests = 500;
  int random_forest_cap = 12;
  int random_sequences = 1000;
  int sequence_length_cap = 5;
  int matrix_tree_types = 4;
  int matrix_tree_entry_cap = 4;
  int event_cap = 8;
  int otter_dwass_cap = 15;
  int enumeration_cap_d2 = 7;
  int enumeration_cap_d3 = 6;
  int lagrange_cap = 8;
  std::int64_t replicas = 100000;
  int simulation_event_cap = 10;
  std::int64_t walk_steps = 100000;
  /// Criteria to run (1..9); empty means all.
  std::vector<int> only;

  /// Applies `cap` to every exhaustive size bound.
  void set_cap(int cap);
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

CheckResult check_bijection(const VerifyConfig& cfg);
CheckResult check_cyclic_lemma(const VerifyConfig& cfg);
CheckResult check_matrix_tree(const VerifyConfig& cfg);
CheckResult check_progeny_law(const VerifyConfig& cfg, const DeskLaws& laws);
CheckResult check_otter_dwass(const VerifyConfig& cfg, const DeskLaws& laws);
CheckResult check_reducible(const VerifyConfig& cfg, const DeskLaws& laws);
CheckResult check_enumeration(const VerifyConfig& cfg);
CheckResult check_lagrange(const VerifyConfig& cfg, const DeskLaws& laws);
CheckResult check_simulation(const VerifyConfig& cfg, const DeskLaws& laws);

/// Criterion number and check, in order.
struct CheckEntry {
  int criterion;
  std::function<CheckResult(const VerifyConfig&, const DeskLaws&)> run;
};
std::vector<CheckEntry> all_checks();

std::vector<CheckResult> run_verify(const VerifyConfig& cfg, const DeskLaws& laws);
/// Config echo followed by one line per check. Contains no timings.
std::string render_report(const VerifyConfig& cfg, const std::vector<CheckResult>& results);

/// Every d-type plane forest with at most `max_vertices` vertices and at
/// least one tree, over all root type sequences.
void for_each_small_forest(int d, int max_vertices, const std::function<void(const TypedForest&)>& visit);

/// Random forest with 1..max_roots trees and at most `max_vertices`
/// vertices.
TypedForest random_forest(int d, int max_vertices, int max_roots, std::mt19937_64& rng);

/// Random element of S_d with lengths <= `max_length` for which the lengths
/// solve (r, x) for some r >= 0 with sum r >= 1; r is written to `roots`.
CodingSequence random_solvable_sequence(int d, int max_length, std::mt19937_64& rng, IntVec& roots);

/// Exact law of (O, A) over every forest with root sequence c and at most
/// `max_total` vertices, by exhaustive enumeration.
std::map<ProgenyEvent, Rational> exhaustive_event_law(const OffspringLaw& law, const RootTypeSequence& c,
                                                      int max_total);

/// Pearson statistic, degrees of freedom and the 1 - alpha quantile.
struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double critical = 0;
  bool passed = false;
};
ChiSquare chi_square_test(const std::vector<std::int64_t>& observed, const std::vector<Rational>& probs,
                          double alpha);

}  // namespace mtf
