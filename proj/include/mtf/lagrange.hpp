#pragma once

#include <map>
#include <vector>

#include "mtf/branching.hpp"
#include "mtf/cyclic.hpp"
#include "mtf/numeric.hpp"

namespace mtf {

/// Graded-lexicographic order on exponent vectors: total degree first.
struct GradedLex {
  bool operator()(const IntVec& a, const IntVec& b) const {
    const int sa = sum(a);
    const int sb = sum(b);
    if (sa != sb) return sa < sb;
    return a < b;
  }
};

/// Sparse power series in d variables, truncated at total degree `order`.
class MultiSeries {
 public:
  using Terms = std::map<IntVec, Rational, GradedLex>;

  MultiSeries(int d, int order);

  static MultiSeries constant(int d, int order, const Rational& c);
  static MultiSeries variable(int d, int order, int i);
  static MultiSeries monomial(int d, int order, const IntVec& m, const Rational& c = Rational(1));

  int vars() const { return d_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }

  Rational coeff(const IntVec& m) const;
  /// Adds c x^m; terms above the truncation order are dropped.
  void add_term(const IntVec& m, const Rational& c);

  MultiSeries operator+(const MultiSeries& o) const;
  MultiSeries operator*(const MultiSeries& o) const;
  MultiSeries operator*(const Rational& c) const;
  MultiSeries pow(int k) const;
  MultiSeries derivative(int i) const;
  /// h(s_1, ..., s_d) for series s_i with zero constant term.
  MultiSeries compose(const std::vector<MultiSeries>& s) const;
  /// Same coefficients, different truncation order.
  MultiSeries truncated(int order) const;

  bool operator==(const MultiSeries& o) const {
    return d_ == o.d_ && order_ == o.order_ && terms_ == o.terms_;
  }

 private:
  void check_compatible(const MultiSeries& o) const;

  int d_;
  int order_;
  Terms terms_;
};

MultiSeries series_from_law(const Distribution& nu, int d, int order);

/// The unique g with g_i = x_i f_i(g) up to total degree N. Requires
/// f_i(0) > 0; throws InvalidArgument otherwise.
std::vector<MultiSeries> solve_fixed_point(const std::vector<MultiSeries>& f, int order);

/// prod_k (prod_{i: j_i = k} d/dx_i) g_k, with g indexed 0..d and j 1-based
/// over types. Throws InvalidArgument when j is not in D.
MultiSeries graph_derivative(const std::vector<MultiSeries>& g, const ElementaryForestCode& j);

/// [x^n] f_0(g) computed from the fixed point, with f_0 = x^r.
Rational lagrange_good_lhs(const std::vector<MultiSeries>& f, const IntVec& r, const IntVec& n);
/// (prod 1/n_i) [x^{n-1}] sum_{j in D} d(f_0, f_1^{n_1}, ..., f_d^{n_d})/dj.
/// Requires n_i >= 1 and f_0(0) = 0.
Rational lagrange_good_rhs(const MultiSeries& f0, const std::vector<MultiSeries>& f, const IntVec& n);

}  // namespace mtf
