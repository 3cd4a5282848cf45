#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtf/coding.hpp"
#include "mtf/numeric.hpp"

namespace mtf {

/// The d x d matrix (k_ij) of a reduced forest: k_ij >= 0 off the diagonal
/// and -k_jj = r_j + sum_{i != j} k_ij for root counts r >= 0.
class LaplacianMatrix {
 public:
  LaplacianMatrix() = default;
  /// Fills the diagonal from r and the off-diagonal entries of `offdiag`
  /// (its diagonal is ignored).
  static LaplacianMatrix from_offdiagonal(const IntVec& roots, const IntMatrix& offdiag);
  /// Takes a full matrix; throws unless the implied root counts are >= 0.
  static LaplacianMatrix from_entries(const IntMatrix& k);

  int types() const { return k_.rows(); }
  int operator()(int i, int j) const { return k_(i, j); }
  const IntMatrix& entries() const { return k_; }
  IntVec roots() const;

  /// det(-K) restricted to the listed indices (all indices when empty).
  BigInt det_minus() const;
  BigInt det_minus(std::span<const int> keep) const;

  bool operator==(const LaplacianMatrix&) const = default;

 private:
  explicit LaplacianMatrix(IntMatrix k) : k_(std::move(k)) {}
  IntMatrix k_;
};

/// Parent-type vector of an elementary forest: code[i] is 0 when the type
/// (i+1) vertex is a root and t when its parent has type t (1-based).
using ElementaryForestCode = IntVec;

/// x_{q,n}: each path rotated at q_i inside the window [0, n_i].
/// Requires 0 <= q_i < n_i, or q_i = 0 when n_i = 0.
CodingSequence cyclic_shift(const CodingSequence& x, const IntVec& q, const IntVec& n);

/// Brute force: number of shifts q for which n is the smallest solution of
/// (r, x_{q,n}). Indices with n_i = 0 carry no shift.
std::uint64_t count_good_shifts(const IntVec& r, const CodingSequence& x, const IntVec& n);

/// (k_ij) = (x^{i,j}(n_i)).
IntMatrix endpoint_matrix(const CodingSequence& x, const IntVec& n);
/// det(-x^{i,j}(n_i)) over the indices with n_i > 0.
BigInt cyclic_determinant(const CodingSequence& x, const IntVec& n);

bool is_elementary_code(const ElementaryForestCode& code);
/// The set D, sorted lexicographically. Filters all (d+1)^d vectors for
/// d <= 6 and grows acyclic vectors directly beyond.
std::vector<ElementaryForestCode> enumerate_elementary_forests(int d);
std::vector<ElementaryForestCode> elementary_forests_by_filter(int d);
std::vector<ElementaryForestCode> elementary_forests_by_growth(int d);

/// sum over D of prod_i k_{j_i i}, where k_{0 i} = r_i.
template <class T>
T elementary_forest_sum(const Matrix<T>& k, std::span<const T> r,
                        const std::vector<ElementaryForestCode>& codes) {
  T total(0);
  for (const ElementaryForestCode& code : codes) {
    T term(1);
    for (std::size_t i = 0; i < code.size() && term != 0; ++i) {
      const int src = code[i];
      term *= src == 0 ? r[i] : k(src - 1, static_cast<int>(i));
    }
    total += term;
  }
  return total;
}

BigInt elementary_forest_sum(const LaplacianMatrix& k, const IntVec& r);

/// Moves one unit of the last jump of x^{m,j} onto the previous step.
/// Requires length(m) >= 2, j != m and a positive last jump.
CodingSequence shift_last_jump(const CodingSequence& x, int m, int j);

}  // namespace mtf
