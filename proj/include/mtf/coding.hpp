#pragma once

#include <optional>
#include <vector>

#include "mtf/forest.hpp"
#include "mtf/numeric.hpp"

namespace mtf {

/// An element of S_d: for each type i a path x^(i) in Z^d of length n_i,
/// starting at 0, with nondecreasing off-diagonal coordinates and a
/// downward skip free diagonal coordinate.
class CodingSequence {
 public:
  CodingSequence() = default;
  /// All d paths of length zero.
  explicit CodingSequence(int d);

  /// increments[i][m] is x^(i)_{m+1} - x^(i)_m. Throws InvalidCoding when the
  /// S_d constraints fail.
  static CodingSequence from_increments(int d, const std::vector<std::vector<IntVec>>& increments);

  int types() const { return d_; }
  int length(int i) const { return static_cast<int>(values_[i].size() / d_) - 1; }
  IntVec lengths() const;

  /// x^{i,j}(step), 0 <= step <= length(i).
  int value(int i, int j, int step) const {
    return values_[i][static_cast<std::size_t>(step) * d_ + j];
  }
  IntVec value(int i, int step) const;
  /// x^(i)(step) - x^(i)(step - 1), 1 <= step <= length(i).
  IntVec increment(int i, int step) const;
  std::vector<std::vector<IntVec>> increments() const;

  /// k_i = -min_{0<=m<=n_i} x^{i,i}_m.
  int depth(int i) const { return static_cast<int>(passage_[i].size()) - 1; }
  /// tau^(i)_k, the first time x^{i,i} reaches -k. Throws LevelNotReached.
  int first_passage(int i, int k) const;

  /// Restriction of every path to [0, n_i].
  CodingSequence prefix(const IntVec& n) const;

  bool operator==(const CodingSequence&) const = default;

 private:
  int d_ = 1;
  std::vector<std::vector<int>> values_;   // values_[i][step * d + j]
  std::vector<std::vector<int>> passage_;  // passage_[i][k] = tau^(i)_k
};

/// Lukasiewicz-type encoding of a forest.
CodingSequence encode(const TypedForest& f);

int first_passage(const CodingSequence& x, int i, int k);

/// x-bar: each path sampled at its successive first passage times.
CodingSequence reduce_sequence(const CodingSequence& x);

/// True when r_j + sum_i x^{i,j}(s_i) = 0 for every j (and s <= lengths).
bool is_solution(const IntVec& r, const CodingSequence& x, const IntVec& s);

/// Smallest solution of the system (r, x), or nullopt when none exists
/// within the available lengths.
std::optional<IntVec> smallest_solution(const IntVec& r, const CodingSequence& x);

/// Inverse of encode: the unique forest with encoding x and root type
/// sequence c. Throws InvalidCoding when (x, c) is not a valid code for r.
TypedForest decode(const CodingSequence& x, const RootTypeSequence& c, const IntVec& r);

/// Root counts of a root type sequence.
IntVec root_counts(int d, const RootTypeSequence& c);

}  // namespace mtf
