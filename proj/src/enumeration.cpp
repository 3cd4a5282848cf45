#include "mtf/enumeration.hpp"

#include <algorithm>
#include <string>

namespace mtf {

LaplacianMatrix Signature::laplacian() const {
  return LaplacianMatrix::from_offdiagonal(roots, offdiag);
}

IntMatrix Signature::child_totals() const {
  const LaplacianMatrix k = laplacian();
  IntMatrix out = IntMatrix::square(types());
  for (int i = 0; i < types(); ++i)
    for (int j = 0; j < types(); ++j) out(i, j) = i == j ? sizes[i] + k(i, i) : k(i, j);
  return out;
}

void check_enumeration_signature(const Signature& sig) {
  const int d = sig.types();
  if (d < 1 || static_cast<int>(sig.sizes.size()) != d || sig.offdiag.rows() != d ||
      sig.offdiag.cols() != d)
    throw InvalidArgument("signature vectors must have d entries");
  if (sum(sig.roots) < 1) throw InvalidArgument("at least one root is required");
  const LaplacianMatrix k = sig.laplacian();
  for (int i = 0; i < d; ++i) {
    if (-k(i, i) <= 0)
      throw InvalidArgument("type " + std::to_string(i + 1) + " has no subtree (-k_ii = 0)");
    if (sig.sizes[i] < -k(i, i))
      throw InvalidArgument("type " + std::to_string(i + 1) + " has fewer vertices than subtrees");
  }
}

namespace {

BigInt product_factorials(const IntVec& v) {
  BigInt out(1);
  for (int x : v) out *= factorial(x);
  return out;
}

BigInt prefix_factor(const Signature& sig) {
  BigInt out(1);
  for (int n : sig.sizes) out *= factorial(n - 1);
  return out;
}

void check_tuple(const Signature& sig, const IndegreeTuple& c) {
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();
  if (static_cast<int>(c.size()) != d) throw InvalidArgument("indegree tuple needs d types");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(c[i].size()) != sig.sizes[i])
      throw InvalidArgument("indegree tuple needs n_i vertices of type " + std::to_string(i + 1));
    IntVec row(d, 0);
    for (const IntVec& u : c[i]) {
      if (static_cast<int>(u.size()) != d) throw InvalidArgument("offspring vector of wrong size");
      for (int j = 0; j < d; ++j) {
        if (u[j] < 0) throw InvalidArgument("negative child count");
        row[j] += u[j];
      }
    }
    for (int j = 0; j < d; ++j)
      if (row[j] != kp(i, j)) throw InvalidArgument("indegree tuple does not match the signature");
  }
}

void check_census(const Signature& sig, const Census& census) {
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();
  IntVec count(d, 0);
  IntMatrix rows = IntMatrix::square(d);
  for (const auto& [key, n] : census) {
    const auto& [i, u] = key;
    if (i < 0 || i >= d || static_cast<int>(u.size()) != d || n < 0)
      throw InvalidArgument("malformed census entry");
    count[i] += n;
    for (int j = 0; j < d; ++j) {
      if (u[j] < 0) throw InvalidArgument("negative child count");
      rows(i, j) += u[j] * n;
    }
  }
  if (count != sig.sizes) throw InvalidArgument("census does not cover n_i vertices");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (rows(i, j) != kp(i, j)) throw InvalidArgument("census does not match the signature");
}

}  // namespace

BigInt count_plane_forests(const Signature& sig) {
  check_enumeration_signature(sig);
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();
  BigInt num = sig.laplacian().det_minus();
  BigInt den(1);
  for (int i = 0; i < d; ++i) {
    den *= sig.sizes[i];
    for (int j = 0; j < d; ++j) num *= binomial(sig.sizes[i] + kp(i, j) - 1, kp(i, j));
  }
  return exact_quotient(num, den);
}

BigInt count_labeled_by_indegree(const Signature& sig, const IndegreeTuple& c) {
  check_enumeration_signature(sig);
  check_tuple(sig, c);
  BigInt num = prefix_factor(sig) * sig.laplacian().det_minus();
  BigInt den = product_factorials(sig.roots);
  for (const auto& vertices : c)
    for (const IntVec& u : vertices) den *= product_factorials(u);
  return exact_quotient(num, den);
}

BigInt count_labeled_by_edge_types(const Signature& sig) {
  check_enumeration_signature(sig);
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();
  BigInt num = prefix_factor(sig) * sig.laplacian().det_minus();
  BigInt den = product_factorials(sig.roots);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(sig.sizes[i]),
                    static_cast<unsigned long>(kp(i, j)));
      num *= p;
      den *= factorial(kp(i, j));
    }
  }
  return exact_quotient(num, den);
}

BigInt count_injective(const Signature& sig) {
  check_enumeration_signature(sig);
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();
  BigInt num = prefix_factor(sig) * sig.laplacian().det_minus();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) num *= binomial(sig.sizes[i], kp(i, j));
  return exact_quotient(num, product_factorials(sig.roots));
}

BigInt count_labeled_by_census(const Signature& sig, const Census& census) {
  check_enumeration_signature(sig);
  check_census(sig, census);
  BigInt num = prefix_factor(sig) * product_factorials(sig.sizes) * sig.laplacian().det_minus();
  // N(k) = sum_{i,j: u_j = k} N_{i,u} + sum_i 1{r_i = k}.
  std::map<int, long> big_n;
  BigInt den(1);
  for (const auto& [key, n] : census) {
    den *= factorial(n);
    for (int uj : key.second) big_n[uj] += n;
  }
  for (int r : sig.roots) big_n[r] += 1;
  for (const auto& [k, times] : big_n) {
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), factorial(k).get_mpz_t(), static_cast<unsigned long>(times));
    den *= p;
  }
  return exact_quotient(num, den);
}

BigInt count_unlabeled_by_census(const Signature& sig, const Census& census) {
  check_enumeration_signature(sig);
  check_census(sig, census);
  BigInt num = prefix_factor(sig) * sig.laplacian().det_minus();
  BigInt den(1);
  for (const auto& [key, n] : census) den *= factorial(n);
  return exact_quotient(num, den);
}

BigInt count_single_type_by_degrees(const IntVec& c) {
  const int n = static_cast<int>(c.size());
  if (n < 1) throw InvalidArgument("need at least one vertex");
  for (int x : c)
    if (x < 0) throw InvalidArgument("negative degree");
  const int k = n - sum(c);
  if (k < 1) return BigInt(0);
  BigInt num = BigInt(k) * binomial(n, k) * factorial(n - k);
  BigInt den = BigInt(n) * product_factorials(c);
  return exact_quotient(num, den);
}

IntMatrix ForestView::edge_types() const {
  IntMatrix k = IntMatrix::square(d);
  for (std::size_t v = 0; v < colors.size(); ++v)
    for (int j = 0; j < d; ++j)
      if (j != colors[v]) k(colors[v], j) += offspring[v][j];
  return k;
}

Census ForestView::census() const {
  Census out;
  for (std::size_t v = 0; v < colors.size(); ++v) ++out[{colors[v], offspring[v]}];
  return out;
}

namespace {

class PlaneGenerator {
 public:
  PlaneGenerator(int d, const RootTypeSequence& c, const GenerationLimits& limits,
                 const std::function<void(const ForestView&)>& visit)
      : d_(d), roots_(c), limits_(limits), visit_(visit), view_{d, roots_, colors_, offspring_} {}

  std::int64_t run() {
    if (limits_.sizes) {
      if (static_cast<int>(limits_.sizes->size()) != d_) throw InvalidArgument("sizes need d entries");
      budget_ = *limits_.sizes;
      for (Color t : roots_) --budget_[t];
      for (int b : budget_)
        if (b < 0) return 0;
    } else {
      total_budget_ = limits_.max_total - static_cast<int>(roots_.size());
      if (total_budget_ < 0) return 0;
    }
    for (Color t : roots_)
      if (t < 0 || t >= d_) throw InvalidArgument("root color out of range");
    step(0);
    return count_;
  }

 private:
  void step(std::size_t head) {
    if (head == colors_.size()) {
      if (next_root_ == roots_.size()) {
        if (limits_.sizes && std::any_of(budget_.begin(), budget_.end(), [](int b) { return b != 0; }))
          return;
        ++count_;
        if (limits_.max_forests > 0 && count_ > limits_.max_forests)
          throw CapExceeded("forest generation cap exceeded");
        visit_(view_);
        return;
      }
      colors_.push_back(roots_[next_root_++]);
      step(head);
      colors_.pop_back();
      --next_root_;
      return;
    }
    const Color t = colors_[head];
    if (limits_.options) {
      for (const IntVec& p : (*limits_.options)[t])
        if (fits(p)) apply(p, head);
    } else {
      IntVec p(d_, 0);
      all_vectors(p, 0, head);
    }
  }

  void all_vectors(IntVec& p, int j, std::size_t head) {
    if (j == d_) {
      apply(p, head);
      return;
    }
    for (p[j] = 0;; ++p[j]) {
      if (!fits_partial(p, j)) break;
      all_vectors(p, j + 1, head);
    }
    p[j] = 0;
  }

  bool fits_partial(const IntVec& p, int j) const {
    if (limits_.sizes) return p[j] <= budget_[j];
    int s = 0;
    for (int q = 0; q <= j; ++q) s += p[q];
    return s <= total_budget_;
  }

  bool fits(const IntVec& p) const {
    if (limits_.sizes) {
      for (int j = 0; j < d_; ++j)
        if (p[j] > budget_[j]) return false;
      return true;
    }
    return sum(p) <= total_budget_;
  }

  void apply(const IntVec& p, std::size_t head) {
    const int s = sum(p);
    if (limits_.sizes)
      for (int j = 0; j < d_; ++j) budget_[j] -= p[j];
    else
      total_budget_ -= s;
    for (int j = 0; j < d_; ++j)
      for (int m = 0; m < p[j]; ++m) colors_.push_back(j);
    offspring_.push_back(p);
    step(head + 1);
    offspring_.pop_back();
    colors_.resize(colors_.size() - s);
    if (limits_.sizes)
      for (int j = 0; j < d_; ++j) budget_[j] += p[j];
    else
      total_budget_ += s;
  }

  int d_;
  const RootTypeSequence& roots_;
  const GenerationLimits& limits_;
  const std::function<void(const ForestView&)>& visit_;
  std::vector<Color> colors_;
  std::vector<IntVec> offspring_;
  ForestView view_;
  IntVec budget_;
  int total_budget_ = 0;
  std::size_t next_root_ = 0;
  std::int64_t count_ = 0;
};

}  // namespace

std::int64_t brute_force_generate(int d, const RootTypeSequence& c, const GenerationLimits& limits,
                                  const std::function<void(const ForestView&)>& visit) {
  PlaneGenerator gen(d, c, limits, visit);
  return gen.run();
}

IntVec LabeledView::root_counts() const {
  IntVec r(d, 0);
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] < 0) ++r[colors[v]];
  return r;
}

IntMatrix LabeledView::edge_types() const {
  IntMatrix k = IntMatrix::square(d);
  for (std::size_t v = 0; v < parent.size(); ++v) {
    const int p = parent[v];
    if (p >= 0 && colors[p] != colors[v]) ++k(colors[p], colors[v]);
  }
  return k;
}

IndegreeTuple LabeledView::indegree() const {
  IndegreeTuple c(d);
  std::vector<int> offset(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    c[i].assign(sizes[i], IntVec(d, 0));
    offset[i + 1] = offset[i] + sizes[i];
  }
  for (std::size_t v = 0; v < parent.size(); ++v) {
    const int p = parent[v];
    if (p >= 0) ++c[colors[p]][p - offset[colors[p]]][colors[v]];
  }
  return c;
}

namespace {

void assign_parents(int v, std::vector<int>& parent, const LabeledView& view,
                    const std::function<void(const LabeledView&)>& visit, std::int64_t& count) {
  const int n = static_cast<int>(parent.size());
  if (v == n) {
    ++count;
    visit(view);
    return;
  }
  for (int p = -1; p < n; ++p) {
    if (p == v) continue;
    parent[v] = p;
    bool cycle = false;
    int w = p;
    while (w >= 0 && w <= v) {
      if (w == v) {
        cycle = true;
        break;
      }
      w = parent[w];
    }
    if (!cycle) assign_parents(v + 1, parent, view, visit, count);
  }
  parent[v] = -1;
}

}  // namespace

std::int64_t for_each_labeled_forest(const IntVec& sizes,
                                     const std::function<void(const LabeledView&)>& visit) {
  const int d = static_cast<int>(sizes.size());
  std::vector<Color> colors;
  for (int i = 0; i < d; ++i) colors.insert(colors.end(), sizes[i], i);
  std::vector<int> parent(colors.size(), -1);
  const LabeledView view{d, sizes, colors, parent};
  std::int64_t count = 0;
  assign_parents(0, parent, view, visit, count);
  return count;
}

RootTypeSequence canonical_roots(const IntVec& r) {
  RootTypeSequence c;
  for (int i = 0; i < static_cast<int>(r.size()); ++i) c.insert(c.end(), r[i], i);
  return c;
}

Census census_of(const IndegreeTuple& c) {
  Census out;
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    for (const IntVec& u : c[i]) ++out[{i, u}];
  return out;
}

namespace {

bool same_offdiag(const IntMatrix& a, const IntMatrix& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != b(i, j)) return false;
  return true;
}

template <class Pred>
BigInt count_plane_matching(const Signature& sig, Pred pred) {
  GenerationLimits limits;
  limits.sizes = sig.sizes;
  const RootTypeSequence c = canonical_roots(sig.roots);
  BigInt total(0);
  brute_force_generate(sig.types(), c, limits, [&](const ForestView& f) {
    if (same_offdiag(f.edge_types(), sig.offdiag) && pred(f)) total += 1;
  });
  return total;
}

template <class Pred>
BigInt fiber_sum(const Signature& sig, Pred pred) {
  GenerationLimits limits;
  limits.sizes = sig.sizes;
  const RootTypeSequence c = canonical_roots(sig.roots);
  Rational total(0);
  brute_force_generate(sig.types(), c, limits, [&](const ForestView& f) {
    if (same_offdiag(f.edge_types(), sig.offdiag) && pred(f))
      total += labeled_fiber(sig.sizes, sig.roots, f.offspring);
  });
  if (total.get_den() != 1) throw Error("labeled fiber sum is not an integer");
  return total.get_num();
}

template <class Pred>
BigInt count_labeled_matching(const Signature& sig, Pred pred) {
  BigInt total(0);
  for_each_labeled_forest(sig.sizes, [&](const LabeledView& f) {
    if (f.root_counts() == sig.roots && same_offdiag(f.edge_types(), sig.offdiag) && pred(f))
      total += 1;
  });
  return total;
}

Census normalized(const Census& c) {
  Census out;
  for (const auto& [k, n] : c)
    if (n != 0) out[k] = n;
  return out;
}

}  // namespace

BigInt brute_force_plane(const Signature& sig) {
  return count_plane_matching(sig, [](const ForestView&) { return true; });
}

BigInt brute_force_unlabeled_by_census(const Signature& sig, const Census& census) {
  const Census want = normalized(census);
  return count_plane_matching(sig, [&](const ForestView& f) { return f.census() == want; });
}

BigInt brute_force_labeled_by_edge_types(const Signature& sig, LabeledMethod method) {
  if (method == LabeledMethod::fiber)
    return fiber_sum(sig, [](const ForestView&) { return true; });
  return count_labeled_matching(sig, [](const LabeledView&) { return true; });
}

BigInt brute_force_labeled_by_indegree(const Signature& sig, const IndegreeTuple& c) {
  return count_labeled_matching(sig, [&](const LabeledView& f) { return f.indegree() == c; });
}

BigInt brute_force_labeled_by_census(const Signature& sig, const Census& census,
                                     LabeledMethod method) {
  const Census want = normalized(census);
  if (method == LabeledMethod::fiber)
    return fiber_sum(sig, [&](const ForestView& f) { return f.census() == want; });
  return count_labeled_matching(
      sig, [&](const LabeledView& f) { return census_of(f.indegree()) == want; });
}

BigInt brute_force_injective(const Signature& sig) {
  return count_labeled_matching(sig, [](const LabeledView& f) {
    for (const auto& vertices : f.indegree())
      for (const IntVec& u : vertices)
        for (int x : u)
          if (x > 1) return false;
    return true;
  });
}

BigInt brute_force_single_type_by_degrees(const IntVec& c) {
  const IntVec sizes{static_cast<int>(c.size())};
  BigInt total(0);
  for_each_labeled_forest(sizes, [&](const LabeledView& f) {
    const IndegreeTuple t = f.indegree();
    for (std::size_t v = 0; v < c.size(); ++v)
      if (t[0][v][0] != c[v]) return;
    total += 1;
  });
  return total;
}

Rational labeled_fiber(const IntVec& sizes, const IntVec& roots, const std::vector<IntVec>& offspring) {
  BigInt den = product_factorials(roots);
  for (const IntVec& p : offspring) den *= product_factorials(p);
  return ratio(product_factorials(sizes), den);
}

namespace {

void compositions(int total, int parts, IntVec& cur, const std::function<void()>& done, int at = 0) {
  if (at == parts - 1) {
    cur[at] = total;
    done();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur[at] = x;
    compositions(total - x, parts, cur, done, at + 1);
  }
}

}  // namespace

void for_each_indegree_tuple(const Signature& sig,
                             const std::function<void(const IndegreeTuple&)>& visit) {
  check_enumeration_signature(sig);
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();
  IndegreeTuple c(d);
  for (int i = 0; i < d; ++i) c[i].assign(sig.sizes[i], IntVec(d, 0));
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) cells.emplace_back(i, j);

  std::function<void(std::size_t)> rec = [&](std::size_t cell) {
    if (cell == cells.size()) {
      visit(c);
      return;
    }
    const auto [i, j] = cells[cell];
    IntVec parts(sig.sizes[i], 0);
    compositions(kp(i, j), sig.sizes[i], parts, [&] {
      for (int k = 0; k < sig.sizes[i]; ++k) c[i][k][j] = parts[k];
      rec(cell + 1);
    });
  };
  rec(0);
}

void for_each_census(const Signature& sig, const std::function<void(const Census&)>& visit) {
  check_enumeration_signature(sig);
  const int d = sig.types();
  const IntMatrix kp = sig.child_totals();

  // Candidate offspring vectors per type: every u <= row i of k'.
  std::vector<std::vector<IntVec>> candidates(d);
  for (int i = 0; i < d; ++i) {
    IntVec u(d, 0);
    while (true) {
      candidates[i].push_back(u);
      int j = 0;
      for (; j < d; ++j) {
        if (++u[j] <= kp(i, j)) break;
        u[j] = 0;
      }
      if (j == d) break;
    }
  }

  Census census;
  std::function<void(int, std::size_t, int, IntVec&)> rec = [&](int i, std::size_t idx, int left,
                                                               IntVec& row) {
    if (i == d) {
      visit(census);
      return;
    }
    if (idx == candidates[i].size()) {
      if (left == 0 && row == IntVec(d, 0)) {
        IntVec next(d);
        for (int j = 0; j < d && i + 1 < d; ++j) next[j] = kp(i + 1, j);
        rec(i + 1, 0, i + 1 < d ? sig.sizes[i + 1] : 0, next);
      }
      return;
    }
    const IntVec& u = candidates[i][idx];
    for (int m = 0; m <= left; ++m) {
      bool ok = true;
      for (int j = 0; j < d; ++j)
        if (u[j] * m > row[j]) ok = false;
      if (!ok) break;
      for (int j = 0; j < d; ++j) row[j] -= u[j] * m;
      if (m > 0) census[{i, u}] = m;
      rec(i, idx + 1, left - m, row);
      if (m > 0) census.erase({i, u});
      for (int j = 0; j < d; ++j) row[j] += u[j] * m;
    }
  };
  IntVec row0(d);
  for (int j = 0; j < d; ++j) row0[j] = kp(0, j);
  rec(0, 0, sig.sizes[0], row0);
}

std::vector<Signature> admissible_signatures(const IntVec& sizes) {
  const int d = static_cast<int>(sizes.size());
  std::vector<Signature> out;
  for (int n : sizes)
    if (n < 1) return out;
  // Odometer over r (d entries) then off-diagonal entries.
  std::vector<int> vars(d + d * (d - 1), 0);
  std::vector<int> bound;
  for (int j = 0; j < d; ++j) bound.push_back(sizes[j]);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) bound.push_back(sizes[j]);
  while (true) {
    Signature sig{IntVec(vars.begin(), vars.begin() + d), sizes, IntMatrix::square(d)};
    std::size_t at = d;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) sig.offdiag(i, j) = vars[at++];
    bool ok = sum(sig.roots) >= 1;
    for (int j = 0; j < d && ok; ++j) {
      int col = sig.roots[j];
      for (int i = 0; i < d; ++i)
        if (i != j) col += sig.offdiag(i, j);
      if (col < 1 || col > sizes[j]) ok = false;
    }
    if (ok) out.push_back(std::move(sig));
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      if (++vars[k] <= bound[k]) break;
      vars[k] = 0;
    }
    if (k == vars.size()) break;
  }
  return out;
}

}  // namespace mtf
