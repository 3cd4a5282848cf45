#include "mtf/cyclic.hpp"

#include <algorithm>
#include <string>

namespace mtf {

LaplacianMatrix LaplacianMatrix::from_offdiagonal(const IntVec& roots, const IntMatrix& offdiag) {
  const int d = static_cast<int>(roots.size());
  if (offdiag.rows() != d || offdiag.cols() != d)
    throw InvalidArgument("off-diagonal matrix has wrong size");
  IntMatrix k = offdiag;
  for (int j = 0; j < d; ++j) {
    if (roots[j] < 0) throw InvalidArgument("negative root count");
    int col = roots[j];
    for (int i = 0; i < d; ++i) {
      if (i == j) continue;
      if (offdiag(i, j) < 0) throw InvalidArgument("negative off-diagonal entry");
      col += offdiag(i, j);
    }
    k(j, j) = -col;
  }
  return LaplacianMatrix(std::move(k));
}

LaplacianMatrix LaplacianMatrix::from_entries(const IntMatrix& k) {
  if (k.rows() != k.cols()) throw InvalidArgument("Laplacian matrix must be square");
  LaplacianMatrix out(k);
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j)
      if (i != j && k(i, j) < 0) throw InvalidArgument("negative off-diagonal entry");
  for (int r : out.roots())
    if (r < 0) throw InvalidArgument("column sums imply a negative root count");
  return out;
}

IntVec LaplacianMatrix::roots() const {
  const int d = types();
  IntVec r(d);
  for (int j = 0; j < d; ++j) {
    int col = -k_(j, j);
    for (int i = 0; i < d; ++i)
      if (i != j) col -= k_(i, j);
    r[j] = col;
  }
  return r;
}

BigInt LaplacianMatrix::det_minus() const {
  Matrix<BigInt> m(types(), types());
  for (int i = 0; i < types(); ++i)
    for (int j = 0; j < types(); ++j) m(i, j) = -k_(i, j);
  return determinant(std::move(m));
}

BigInt LaplacianMatrix::det_minus(std::span<const int> keep) const {
  const IntMatrix sub = k_.principal_submatrix(keep);
  Matrix<BigInt> m(sub.rows(), sub.cols());
  for (int i = 0; i < sub.rows(); ++i)
    for (int j = 0; j < sub.cols(); ++j) m(i, j) = -sub(i, j);
  return determinant(std::move(m));
}

CodingSequence cyclic_shift(const CodingSequence& x, const IntVec& q, const IntVec& n) {
  const int d = x.types();
  if (static_cast<int>(q.size()) != d || static_cast<int>(n.size()) != d)
    throw InvalidArgument("shift and window vectors must have d entries");
  std::vector<std::vector<IntVec>> inc = x.increments();
  for (int i = 0; i < d; ++i) {
    if (n[i] < 0 || n[i] > x.length(i)) throw InvalidArgument("window exceeds the path length");
    const bool ok = n[i] == 0 ? q[i] == 0 : (q[i] >= 0 && q[i] < n[i]);
    if (!ok) throw InvalidArgument("shift out of range for type " + std::to_string(i + 1));
    std::rotate(inc[i].begin(), inc[i].begin() + q[i], inc[i].begin() + n[i]);
  }
  return CodingSequence::from_increments(d, inc);
}

IntMatrix endpoint_matrix(const CodingSequence& x, const IntVec& n) {
  const int d = x.types();
  IntMatrix k = IntMatrix::square(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) k(i, j) = x.value(i, j, n[i]);
  return k;
}

namespace {

std::vector<int> active_indices(const IntVec& n) {
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(n.size()); ++i)
    if (n[i] > 0) keep.push_back(i);
  return keep;
}

}  // namespace

std::uint64_t count_good_shifts(const IntVec& r, const CodingSequence& x, const IntVec& n) {
  const int d = x.types();
  if (static_cast<int>(n.size()) != d) throw InvalidArgument("window vector has wrong size");
  if (!is_solution(r, x, n)) throw InvalidArgument("n is not a solution of (r, x)");
  const CodingSequence window = x.prefix(n);
  IntVec q(d, 0);
  std::uint64_t good = 0;
  while (true) {
    const auto s = smallest_solution(r, cyclic_shift(window, q, n));
    if (s && *s == n) ++good;
    int i = 0;
    for (; i < d; ++i) {
      if (++q[i] < n[i]) break;
      q[i] = 0;
    }
    if (i == d) break;
  }
  return good;
}

BigInt cyclic_determinant(const CodingSequence& x, const IntVec& n) {
  const IntMatrix k = endpoint_matrix(x, n);
  const std::vector<int> keep = active_indices(n);
  Matrix<BigInt> m(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      m(static_cast<int>(a), static_cast<int>(b)) = -k(keep[a], keep[b]);
  return determinant(std::move(m));
}

bool is_elementary_code(const ElementaryForestCode& code) {
  const int d = static_cast<int>(code.size());
  for (int i = 0; i < d; ++i)
    if (code[i] < 0 || code[i] > d || code[i] == i + 1) return false;
  // Following parents from any vertex must reach the root sink within d steps.
  for (int i = 0; i < d; ++i) {
    int v = i + 1;
    int steps = 0;
    while (v != 0 && steps <= d) {
      v = code[v - 1];
      ++steps;
    }
    if (v != 0) return false;
  }
  return true;
}

std::vector<ElementaryForestCode> elementary_forests_by_filter(int d) {
  if (d < 1) throw InvalidArgument("d must be positive");
  std::vector<ElementaryForestCode> out;
  ElementaryForestCode code(d, 0);
  while (true) {
    if (is_elementary_code(code)) out.push_back(code);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++code[i] <= d) break;
      code[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

namespace {

/// Assigns parents one vertex at a time, rejecting a choice as soon as it
/// closes a cycle among the vertices assigned so far.
void grow(ElementaryForestCode& code, int i, std::vector<ElementaryForestCode>& out) {
  const int d = static_cast<int>(code.size());
  if (i == d) {
    out.push_back(code);
    return;
  }
  for (int parent = 0; parent <= d; ++parent) {
    if (parent == i + 1) continue;
    code[i] = parent;
    bool cycle = false;
    int v = parent;
    while (v != 0 && v - 1 <= i) {
      if (v == i + 1) {
        cycle = true;
        break;
      }
      v = code[v - 1];
    }
    if (!cycle) grow(code, i + 1, out);
  }
  code[i] = 0;
}

}  // namespace

std::vector<ElementaryForestCode> elementary_forests_by_growth(int d) {
  if (d < 1) throw InvalidArgument("d must be positive");
  std::vector<ElementaryForestCode> out;
  ElementaryForestCode code(d, 0);
  grow(code, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementaryForestCode> enumerate_elementary_forests(int d) {
  return d <= 6 ? elementary_forests_by_filter(d) : elementary_forests_by_growth(d);
}

BigInt elementary_forest_sum(const LaplacianMatrix& k, const IntVec& r) {
  const int d = k.types();
  if (static_cast<int>(r.size()) != d) throw InvalidArgument("root vector has wrong size");
  if (k.roots() != r) throw InvalidArgument("Laplacian column sums do not match the roots");
  const Matrix<BigInt> big = k.entries().cast<BigInt>();
  std::vector<BigInt> rr(r.begin(), r.end());
  return elementary_forest_sum<BigInt>(big, rr, enumerate_elementary_forests(d));
}

CodingSequence shift_last_jump(const CodingSequence& x, int m, int j) {
  const int d = x.types();
  if (m < 0 || m >= d || j < 0 || j >= d || m == j)
    throw InvalidArgument("shift_last_jump needs two distinct types");
  const int len = x.length(m);
  if (len < 2) throw InvalidArgument("shift_last_jump needs a path of length at least 2");
  std::vector<std::vector<IntVec>> inc = x.increments();
  if (inc[m][len - 1][j] <= 0) throw InvalidArgument("last jump is zero");
  inc[m][len - 1][j] -= 1;
  inc[m][len - 2][j] += 1;
  return CodingSequence::from_increments(d, inc);
}

}  // namespace mtf
