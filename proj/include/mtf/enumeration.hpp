#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mtf/cyclic.hpp"
#include "mtf/forest.hpp"
#include "mtf/numeric.hpp"

namespace mtf {

/// Root counts, vertex counts and off-diagonal edge-type counts of a class
/// of forests. The diagonal of `offdiag` is ignored.
struct Signature {
  IntVec roots;
  IntVec sizes;
  IntMatrix offdiag;

  int types() const { return static_cast<int>(roots.size()); }
  LaplacianMatrix laplacian() const;
  /// k'_ii = n_i + k_ii and k'_ij = k_ij: type-j children of type-i vertices.
  IntMatrix child_totals() const;

  bool operator==(const Signature&) const = default;
};

/// Throws InvalidArgument unless r >= 0, sum r >= 1, n_j >= -k_jj and
/// -k_ii > 0 for every i.
void check_enumeration_signature(const Signature& sig);

/// c[i][k][j]: number of type-j children of the k-th type-i vertex.
using IndegreeTuple = std::vector<std::vector<IntVec>>;
/// N_{i,u}: number of type-i vertices with offspring vector u.
using Census = std::map<std::pair<int, IntVec>, int>;

BigInt count_plane_forests(const Signature& sig);
BigInt count_labeled_by_indegree(const Signature& sig, const IndegreeTuple& c);
BigInt count_labeled_by_edge_types(const Signature& sig);
BigInt count_injective(const Signature& sig);
BigInt count_labeled_by_census(const Signature& sig, const Census& census);
BigInt count_unlabeled_by_census(const Signature& sig, const Census& census);
/// Labeled rooted forests on [n] in which vertex i has c_i children.
BigInt count_single_type_by_degrees(const IntVec& c);

/// Plane forest produced by the generator: colors and offspring vectors in
/// BFS order (tree by tree).
struct ForestView {
  int d;
  const RootTypeSequence& roots;
  const std::vector<Color>& colors;
  const std::vector<IntVec>& offspring;

  TypedForest materialize() const { return TypedForest::from_offspring(d, roots, offspring); }
  IntMatrix edge_types() const;
  Census census() const;
};

struct GenerationLimits {
  /// Exact per-type vertex counts; when absent, `max_total` bounds the size.
  std::optional<IntVec> sizes;
  int max_total = 0;
  /// Allowed offspring vectors per type; when absent every vector that fits
  /// the budget is tried.
  std::optional<std::vector<std::vector<IntVec>>> options;
  /// Exceeding this many forests throws CapExceeded (0 disables the cap).
  std::int64_t max_forests = 0;
};

/// Exhaustive, duplicate-free generation of plane forests with root type
/// sequence c, in lexicographic order of their BFS offspring sequences.
/// Returns the number of forests visited.
std::int64_t brute_force_generate(int d, const RootTypeSequence& c, const GenerationLimits& limits,
                                  const std::function<void(const ForestView&)>& visit);

/// Labeled forest: vertex v has type `colors[v]` and parent `parent[v]`
/// (-1 for roots); type-i vertices carry labels 1..n_i in id order.
struct LabeledView {
  int d;
  const IntVec& sizes;
  const std::vector<Color>& colors;
  const std::vector<int>& parent;

  IntVec root_counts() const;
  IntMatrix edge_types() const;
  IndegreeTuple indegree() const;
};

/// Every rooted forest (parent map, children unordered) on the labeled
/// vertex set with the given per-type sizes.
std::int64_t for_each_labeled_forest(const IntVec& sizes,
                                     const std::function<void(const LabeledView&)>& visit);

/// Sorted root type sequence with r_i entries equal to i.
RootTypeSequence canonical_roots(const IntVec& r);
Census census_of(const IndegreeTuple& c);

BigInt brute_force_plane(const Signature& sig);
BigInt brute_force_unlabeled_by_census(const Signature& sig, const Census& census);

enum class LabeledMethod {
  /// Sum over plane forests of the number of labeled forests above each.
  fiber,
  /// Enumerate labeled forests one by one.
  materialize,
};

BigInt brute_force_labeled_by_edge_types(const Signature& sig,
                                         LabeledMethod method = LabeledMethod::fiber);
BigInt brute_force_labeled_by_indegree(const Signature& sig, const IndegreeTuple& c);
BigInt brute_force_labeled_by_census(const Signature& sig, const Census& census,
                                     LabeledMethod method = LabeledMethod::fiber);
BigInt brute_force_injective(const Signature& sig);
BigInt brute_force_single_type_by_degrees(const IntVec& c);

/// Weight of one plane forest in the labeled count of its class:
/// prod n_j! / (prod r_i! prod_v prod_j p_j(v)!). Summed over a class closed
/// under sibling and root reordering, the weights give an integer.
Rational labeled_fiber(const IntVec& sizes, const IntVec& roots, const std::vector<IntVec>& offspring);

/// All indegree tuples compatible with sig, or all censuses.
void for_each_indegree_tuple(const Signature& sig,
                             const std::function<void(const IndegreeTuple&)>& visit);
void for_each_census(const Signature& sig, const std::function<void(const Census&)>& visit);

/// All signatures with the given sizes that satisfy the enumeration
/// hypotheses.
std::vector<Signature> admissible_signatures(const IntVec& sizes);

}  // namespace mtf
