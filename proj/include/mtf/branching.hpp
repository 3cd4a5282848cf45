#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mtf/forest.hpp"
#include "mtf/numeric.hpp"

namespace mtf {

/// Finite-support distribution on Z_+^d; keys in lexicographic order.
using Distribution = std::map<IntVec, Rational>;

inline constexpr std::size_t kDefaultSupportCap = 1u << 20;

Distribution dirac(const IntVec& z);
Rational mass_at(const Distribution& nu, const IntVec& z);
Distribution convolve(const Distribution& a, const Distribution& b,
                      std::size_t support_cap = kDefaultSupportCap);
/// n-fold convolution by repeated squaring; nu^{*0} = delta_0. Throws
/// CapExceeded when an intermediate support outgrows the cap.
Distribution convolution_power(const Distribution& nu, int n, int d,
                               std::size_t support_cap = kDefaultSupportCap);

/// One offspring distribution per type, with exact weights summing to 1.
class OffspringLaw {
 public:
  OffspringLaw() = default;
  OffspringLaw(int d, std::vector<Distribution> nu);

  int types() const { return d_; }
  const Distribution& operator[](int i) const { return nu_[i]; }
  const std::vector<Distribution>& distributions() const { return nu_; }

  Matrix<Rational> mean_matrix() const;
  /// Every individual has exactly one child almost surely.
  bool degenerate() const;

  bool operator==(const OffspringLaw&) const = default;

 private:
  int d_ = 1;
  std::vector<Distribution> nu_;
};

enum class Regime { subcritical, critical, supercritical };
std::string to_string(Regime r);

struct Classification {
  bool irreducible = false;
  bool degenerate = false;
  Regime regime = Regime::subcritical;
  /// Certified enclosure rho_lower <= rho <= rho_upper.
  Rational rho_lower;
  Rational rho_upper;
  bool rho_exact = false;
  Matrix<Rational> mean;
};

/// Irreducibility, spectral radius enclosure and regime. Throws RegimeError
/// when the enclosure still contains 1 at the requested width.
Classification classify(const OffspringLaw& law, double width = 1e-12);

/// Evaluates the joint law of total progeny and edge-type counts, caching
/// convolution powers per (type, n).
class ProgenyCalculator {
 public:
  explicit ProgenyCalculator(OffspringLaw law, std::size_t support_cap = kDefaultSupportCap);

  const OffspringLaw& law() const { return law_; }

  /// P_r(O = n, A_ij = offdiag_ij for i != j).
  Rational joint(const IntVec& r, const IntVec& n, const IntMatrix& offdiag);
  /// P_r(O = n), summing joint over every admissible off-diagonal matrix.
  Rational marginal(const IntVec& r, const IntVec& n);

  const Distribution& power(int i, int n);

 private:
  OffspringLaw law_;
  std::size_t support_cap_;
  std::map<std::pair<int, int>, Distribution> powers_;
};

Rational progeny_law(const OffspringLaw& law, const IntVec& r, const IntVec& n,
                     const IntMatrix& offdiag);
Rational marginal_progeny_law(const OffspringLaw& law, const IntVec& r, const IntVec& n);

/// Checks r >= 0, sum r >= 1, offdiag >= 0 off the diagonal, n_j >= -k_jj.
void check_progeny_event(const IntVec& r, const IntVec& n, const IntMatrix& offdiag);

/// Single-type total progeny: (k/n) nu^{*n}(n - k). nu is keyed by 1-vectors.
Rational otter_dwass_1type(const Distribution& nu, int k, int n);

enum class ReducibleRegime { childless_type2, type2_only_type2 };

/// P_{(r1,0)}(O_1 = n1, O_2 = n2) for 2-type laws where type 2 never bears
/// type 1 (m_21 = 0). Uses the childless formula when type 2 has no
/// children at all and the convolution-sum formula otherwise (n2 >= 1).
Rational reducible_2type_laws(const OffspringLaw& law, int r1, int n1, int n2);
ReducibleRegime reducible_regime(const OffspringLaw& law);

/// Outcome of one simulated forest.
struct SimulationResult {
  std::optional<TypedForest> forest;
  bool truncated = false;
  /// Vertices generated before stopping (all of them when not truncated).
  std::int64_t vertices = 0;
};

/// Draws offspring vectors by inverse CDF over each support in key order.
class Simulator {
 public:
  explicit Simulator(const OffspringLaw& law);

  /// Generates a forest tree by tree, generation by generation. Returns a
  /// truncation report when more than `cap` vertices would be needed.
  SimulationResult run(const RootTypeSequence& c, std::mt19937_64& rng, std::int64_t cap) const;

  /// Independent stream for replica `index` under `seed`.
  static std::mt19937_64 replica_stream(std::uint64_t seed, std::uint64_t index);

  /// Index into support(t) of one offspring draw for a type-t individual.
  std::size_t draw_index(Color t, std::mt19937_64& rng) const;
  const std::vector<IntVec>& support(Color t) const { return support_[t]; }
  int types() const { return d_; }

 private:
  int d_;
  std::vector<std::vector<IntVec>> support_;
  std::vector<std::vector<double>> cdf_;
};

SimulationResult simulate_forest(const OffspringLaw& law, const RootTypeSequence& c,
                                 std::uint64_t seed, std::int64_t cap);

/// Offspring tallies of the first `steps` entries of every coding path of
/// the infinite forest made of replicas 0, 1, 2, ... with root sequence c.
struct WalkTally {
  /// counts[i][k]: draws equal to support(i)[k] among the first steps of x^(i).
  std::vector<std::vector<std::int64_t>> counts;
  /// Types that no root can reach contribute no steps.
  std::vector<bool> reachable;
  std::int64_t draws = 0;
  std::int64_t replicas = 0;
};

/// Streams the forest in BFS order, emitting each type-i subtree once every
/// earlier-ranked one is complete. Individuals whose descendants can no
/// longer reach an unfinished path are not expanded. Throws CapExceeded
/// after `draw_cap` offspring draws.
WalkTally walk_increment_tally(const OffspringLaw& law, const RootTypeSequence& c, std::uint64_t seed,
                               std::int64_t steps, std::int64_t draw_cap);

/// (n, A) of a finite forest.
struct ProgenyEvent {
  IntVec sizes;
  IntMatrix offdiag;

  bool operator==(const ProgenyEvent&) const = default;
  bool operator<(const ProgenyEvent& o) const {
    if (sizes != o.sizes) return sizes < o.sizes;
    return offdiag < o.offdiag;
  }
};

ProgenyEvent progeny_event(const TypedForest& f);

struct EventTable {
  std::map<ProgenyEvent, std::int64_t> counts;
  std::int64_t truncated = 0;
  std::int64_t replicas = 0;
};

/// Runs `replicas` independent forests and tallies their events. Work is
/// split over `jobs` threads; the result does not depend on `jobs`.
EventTable simulate_events(const OffspringLaw& law, const RootTypeSequence& c,
                           std::uint64_t seed, std::int64_t replicas, std::int64_t cap,
                           int jobs = 1);

}  // namespace mtf
