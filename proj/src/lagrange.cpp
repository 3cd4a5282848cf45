#include "mtf/lagrange.hpp"

#include <algorithm>
#include <string>

namespace mtf {

MultiSeries::MultiSeries(int d, int order) : d_(d), order_(order) {
  if (d < 1) throw InvalidArgument("a series needs at least one variable");
  if (order < 0) throw InvalidArgument("negative truncation order");
}

MultiSeries MultiSeries::constant(int d, int order, const Rational& c) {
  return monomial(d, order, IntVec(d, 0), c);
}

MultiSeries MultiSeries::variable(int d, int order, int i) {
  if (i < 0 || i >= d) throw InvalidArgument("variable index out of range");
  IntVec m(d, 0);
  m[i] = 1;
  return monomial(d, order, m);
}

MultiSeries MultiSeries::monomial(int d, int order, const IntVec& m, const Rational& c) {
  MultiSeries s(d, order);
  s.add_term(m, c);
  return s;
}

Rational MultiSeries::coeff(const IntVec& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiSeries::add_term(const IntVec& m, const Rational& c) {
  if (static_cast<int>(m.size()) != d_) throw InvalidArgument("exponent of wrong size");
  if (std::any_of(m.begin(), m.end(), [](int e) { return e < 0; }))
    throw InvalidArgument("negative exponent");
  if (sum(m) > order_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiSeries::check_compatible(const MultiSeries& o) const {
  if (d_ != o.d_ || order_ != o.order_)
    throw InvalidArgument("series differ in variables or truncation order");
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
  check_compatible(o);
  MultiSeries out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
  check_compatible(o);
  MultiSeries out(d_, order_);
  IntVec m(d_);
  for (const auto& [a, ca] : terms_) {
    const int da = sum(a);
    for (const auto& [b, cb] : o.terms_) {
      if (da + sum(b) > order_) break;
      for (int i = 0; i < d_; ++i) m[i] = a[i] + b[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

MultiSeries MultiSeries::operator*(const Rational& c) const {
  MultiSeries out(d_, order_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

MultiSeries MultiSeries::pow(int k) const {
  if (k < 0) throw InvalidArgument("negative power");
  MultiSeries result = constant(d_, order_, Rational(1));
  MultiSeries base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiSeries MultiSeries::derivative(int i) const {
  if (i < 0 || i >= d_) throw InvalidArgument("variable index out of range");
  MultiSeries out(d_, order_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    IntVec e = m;
    --e[i];
    out.add_term(e, c * m[i]);
  }
  return out;
}

MultiSeries MultiSeries::compose(const std::vector<MultiSeries>& s) const {
  if (static_cast<int>(s.size()) != d_) throw InvalidArgument("compose needs one series per variable");
  const int d2 = s.front().vars();
  for (const MultiSeries& si : s) {
    if (si.vars() != d2 || si.order() != order_)
      throw InvalidArgument("composed series differ in variables or order");
    if (si.coeff(IntVec(d2, 0)) != 0) throw InvalidArgument("composed series need zero constant term");
  }
  std::vector<std::vector<MultiSeries>> powers(d_);
  for (int i = 0; i < d_; ++i) powers[i].push_back(constant(d2, order_, Rational(1)));
  MultiSeries out(d2, order_);
  for (const auto& [m, c] : terms_) {
    MultiSeries term = constant(d2, order_, c);
    for (int i = 0; i < d_; ++i) {
      while (static_cast<int>(powers[i].size()) <= m[i]) powers[i].push_back(powers[i].back() * s[i]);
      if (m[i] > 0) term = term * powers[i][m[i]];
    }
    out = out + term;
  }
  return out;
}

MultiSeries MultiSeries::truncated(int order) const {
  MultiSeries out(d_, order);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

MultiSeries series_from_law(const Distribution& nu, int d, int order) {
  MultiSeries out(d, order);
  for (const auto& [z, p] : nu) {
    if (p < 0) throw InvalidArgument("negative probability");
    out.add_term(z, p);
  }
  return out;
}

std::vector<MultiSeries> solve_fixed_point(const std::vector<MultiSeries>& f, int order) {
  const int d = static_cast<int>(f.size());
  if (d < 1) throw InvalidArgument("need at least one series");
  for (int i = 0; i < d; ++i) {
    if (f[i].vars() != d) throw InvalidArgument("series must have d variables");
    if (!(f[i].coeff(IntVec(d, 0)) > 0))
      throw InvalidArgument("f_" + std::to_string(i + 1) + "(0) must be positive");
    for (const auto& [m, c] : f[i].terms())
      if (c < 0) throw InvalidArgument("generating functions need nonnegative coefficients");
  }
  std::vector<MultiSeries> g(d, MultiSeries(d, order));
  std::vector<MultiSeries> fn;
  for (const MultiSeries& fi : f) fn.push_back(fi.truncated(order));
  for (int round = 0; round <= order + 1; ++round) {
    std::vector<MultiSeries> next;
    for (int i = 0; i < d; ++i) next.push_back(MultiSeries::variable(d, order, i) * fn[i].compose(g));
    if (next == g) return g;
    g = std::move(next);
  }
  throw InvalidArgument("fixed-point iteration did not settle");
}

MultiSeries graph_derivative(const std::vector<MultiSeries>& g, const ElementaryForestCode& j) {
  const int d = static_cast<int>(j.size());
  if (static_cast<int>(g.size()) != d + 1) throw InvalidArgument("graph derivative needs d+1 series");
  if (!is_elementary_code(j)) throw InvalidArgument("code is not an elementary forest");
  MultiSeries out = MultiSeries::constant(d, g.front().order(), Rational(1));
  for (int k = 0; k <= d; ++k) {
    MultiSeries gk = g[k];
    for (int i = 0; i < d; ++i)
      if (j[i] == k) gk = gk.derivative(i);
    out = out * gk;
  }
  return out;
}

Rational lagrange_good_lhs(const std::vector<MultiSeries>& f, const IntVec& r, const IntVec& n) {
  const int d = static_cast<int>(f.size());
  if (static_cast<int>(r.size()) != d || static_cast<int>(n.size()) != d)
    throw InvalidArgument("r and n need d entries");
  const int order = sum(n);
  const std::vector<MultiSeries> g = solve_fixed_point(f, order);
  MultiSeries value = MultiSeries::constant(d, order, Rational(1));
  for (int i = 0; i < d; ++i) value = value * g[i].pow(r[i]);
  return value.coeff(n);
}

Rational lagrange_good_rhs(const MultiSeries& f0, const std::vector<MultiSeries>& f, const IntVec& n) {
  const int d = static_cast<int>(f.size());
  if (static_cast<int>(n.size()) != d) throw InvalidArgument("n needs d entries");
  for (int i = 0; i < d; ++i)
    if (n[i] < 1) throw InvalidArgument("n must be positive in every coordinate");
  if (f0.vars() != d) throw InvalidArgument("f_0 must have d variables");
  if (f0.coeff(IntVec(d, 0)) != 0) throw InvalidArgument("f_0 must vanish at 0 (sum r >= 1)");
  const int order = sum(n);
  std::vector<MultiSeries> g{f0.truncated(order)};
  for (int i = 0; i < d; ++i) {
    if (f[i].vars() != d) throw InvalidArgument("series must have d variables");
    g.push_back(f[i].truncated(order).pow(n[i]));
  }
  IntVec target(n);
  for (int& t : target) --t;
  Rational total(0);
  for (const ElementaryForestCode& j : enumerate_elementary_forests(d))
    total += graph_derivative(g, j).coeff(target);
  for (int ni : n) total /= ni;
  return total;
}

}  // namespace mtf
