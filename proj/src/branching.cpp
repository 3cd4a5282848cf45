#include "mtf/branching.hpp"

#include <algorithm>
#include <cmath>

#include "mtf/cyclic.hpp"

namespace mtf {

Distribution dirac(const IntVec& z) { return Distribution{{z, Rational(1)}}; }

Rational mass_at(const Distribution& nu, const IntVec& z) {
  auto it = nu.find(z);
  return it == nu.end() ? Rational(0) : it->second;
}

Distribution convolve(const Distribution& a, const Distribution& b, std::size_t support_cap) {
  Distribution out;
  for (const auto& [za, pa] : a) {
    for (const auto& [zb, pb] : b) {
      IntVec z(za.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = za[j] + zb[j];
      out[std::move(z)] += pa * pb;
      if (out.size() > support_cap) throw CapExceeded("convolution support exceeds the cap");
    }
  }
  return out;
}

Distribution convolution_power(const Distribution& nu, int n, int d, std::size_t support_cap) {
  if (n < 0) throw InvalidArgument("negative convolution power");
  Distribution result = dirac(IntVec(d, 0));
  Distribution base = nu;
  while (n > 0) {
    if (n & 1) result = convolve(result, base, support_cap);
    n >>= 1;
    if (n > 0) base = convolve(base, base, support_cap);
  }
  return result;
}

OffspringLaw::OffspringLaw(int d, std::vector<Distribution> nu) : d_(d), nu_(std::move(nu)) {
  if (d < 1) throw InvalidArgument("number of types must be positive");
  if (static_cast<int>(nu_.size()) != d) throw InvalidArgument("expected one distribution per type");
  for (int i = 0; i < d; ++i) {
    Rational total(0);
    for (auto it = nu_[i].begin(); it != nu_[i].end();) {
      if (static_cast<int>(it->first.size()) != d)
        throw InvalidArgument("offspring vector of wrong size");
      for (int z : it->first)
        if (z < 0) throw InvalidArgument("negative offspring count");
      if (it->second < 0) throw InvalidArgument("negative weight");
      total += it->second;
      if (it->second == 0)
        it = nu_[i].erase(it);
      else
        ++it;
    }
    if (total != 1)
      throw InvalidArgument("weights of type " + std::to_string(i + 1) + " sum to " +
                            mtf::to_string(total));
  }
}

Matrix<Rational> OffspringLaw::mean_matrix() const {
  Matrix<Rational> m(d_, d_, Rational(0));
  for (int i = 0; i < d_; ++i)
    for (const auto& [z, p] : nu_[i])
      for (int j = 0; j < d_; ++j) m(i, j) += p * z[j];
  return m;
}

bool OffspringLaw::degenerate() const {
  for (const Distribution& nu : nu_)
    for (const auto& [z, p] : nu)
      if (sum(z) != 1) return false;
  return true;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::subcritical:
      return "subcritical";
    case Regime::critical:
      return "critical";
    case Regime::supercritical:
      return "supercritical";
  }
  return "unknown";
}

namespace {

/// Null space of a square rational matrix when it is one-dimensional.
std::optional<std::vector<Rational>> unique_null_vector(Matrix<Rational> a) {
  const int n = a.rows();
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = row;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) continue;
    for (int j = 0; j < n; ++j) std::swap(a(row, j), a(p, j));
    const Rational inv = 1 / a(row, col);
    for (int j = 0; j < n; ++j) a(row, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (n - row != 1) return std::nullopt;
  int free_col = 0;
  for (int c = 0, k = 0; c < n; ++c) {
    if (k < static_cast<int>(pivot_col.size()) && pivot_col[k] == c) {
      ++k;
    } else {
      free_col = c;
      break;
    }
  }
  std::vector<Rational> v(n, Rational(0));
  v[free_col] = 1;
  for (int k = 0; k < static_cast<int>(pivot_col.size()); ++k) v[pivot_col[k]] = -a(k, free_col);
  return v;
}

struct Enclosure {
  Rational lower;
  Rational upper;
};

/// Spectral radius of an irreducible nonnegative block.
Enclosure block_radius(const Matrix<Rational>& m, double width) {
  const int n = m.rows();
  if (n == 1) return {m(0, 0), m(0, 0)};

  Matrix<Rational> shifted = m;
  for (int i = 0; i < n; ++i) shifted(i, i) -= 1;
  if (auto v = unique_null_vector(shifted)) {
    const bool pos = std::all_of(v->begin(), v->end(), [](const Rational& x) { return x > 0; });
    const bool neg = std::all_of(v->begin(), v->end(), [](const Rational& x) { return x < 0; });
    if (pos || neg) return {Rational(1), Rational(1)};
  }

  // Collatz-Wielandt bounds min (Mv)_i / v_i <= rho <= max (Mv)_i / v_i for
  // any positive v; v comes from power iteration on I + M (primitive).
  std::vector<double> md(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) md[i * n + j] = m(i, j).get_d();
  std::vector<double> v(n, 1.0);
  Enclosure best{Rational(0), Rational(0)};
  bool have = false;
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> w(v);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += md[i * n + j] * v[j];
    const double mx = *std::max_element(w.begin(), w.end());
    for (int i = 0; i < n; ++i) v[i] = w[i] / mx;
    if (it % 16 != 0) continue;
    Enclosure e;
    for (int i = 0; i < n; ++i) {
      Rational mv(0);
      const Rational vi(v[i]);
      for (int j = 0; j < n; ++j) mv += m(i, j) * Rational(v[j]);
      const Rational ratio = mv / vi;
      if (i == 0 || ratio < e.lower) e.lower = ratio;
      if (i == 0 || ratio > e.upper) e.upper = ratio;
    }
    if (!have || e.upper - e.lower < best.upper - best.lower) best = e;
    have = true;
    if (Rational(best.upper - best.lower).get_d() <= width) break;
  }
  return best;
}

}  // namespace

Classification classify(const OffspringLaw& law, double width) {
  const int d = law.types();
  Classification out;
  out.mean = law.mean_matrix();
  out.degenerate = law.degenerate();

  std::vector<std::vector<bool>> reach(d, std::vector<bool>(d, false));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) reach[i][j] = out.mean(i, j) > 0;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;

  out.irreducible = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && !reach[i][j]) out.irreducible = false;

  std::vector<int> block(d, -1);
  int blocks = 0;
  for (int i = 0; i < d; ++i) {
    if (block[i] >= 0) continue;
    for (int j = i; j < d; ++j)
      if (j == i || (reach[i][j] && reach[j][i])) block[j] = blocks;
    ++blocks;
  }

  bool first = true;
  for (int b = 0; b < blocks; ++b) {
    std::vector<int> members;
    for (int i = 0; i < d; ++i)
      if (block[i] == b) members.push_back(i);
    const Matrix<Rational> sub = out.mean.principal_submatrix(members);
    const Enclosure e = block_radius(sub, width);
    if (first || e.lower > out.rho_lower) out.rho_lower = e.lower;
    if (first || e.upper > out.rho_upper) out.rho_upper = e.upper;
    first = false;
  }
  out.rho_exact = out.rho_lower == out.rho_upper;

  if (out.rho_upper < 1) {
    out.regime = Regime::subcritical;
  } else if (out.rho_lower > 1) {
    out.regime = Regime::supercritical;
  } else if (out.rho_exact) {
    out.regime = Regime::critical;
  } else {
    throw RegimeError("spectral radius enclosure [" + to_decimal(out.rho_lower) + ", " +
                      to_decimal(out.rho_upper) + "] contains 1");
  }
  return out;
}

void check_progeny_event(const IntVec& r, const IntVec& n, const IntMatrix& offdiag) {
  const int d = static_cast<int>(r.size());
  if (static_cast<int>(n.size()) != d || offdiag.rows() != d || offdiag.cols() != d)
    throw InvalidArgument("event vectors must have d entries");
  if (sum(r) < 1) throw InvalidArgument("at least one root is required");
  const LaplacianMatrix k = LaplacianMatrix::from_offdiagonal(r, offdiag);
  for (int i = 0; i < d; ++i) {
    if (n[i] < 0) throw InvalidArgument("negative vertex count");
    if (n[i] < -k(i, i))
      throw InvalidArgument("type " + std::to_string(i + 1) +
                            " has fewer vertices than subtrees (n_i < -k_ii)");
  }
}

ProgenyCalculator::ProgenyCalculator(OffspringLaw law, std::size_t support_cap)
    : law_(std::move(law)), support_cap_(support_cap) {}

const Distribution& ProgenyCalculator::power(int i, int n) {
  auto key = std::make_pair(i, n);
  auto it = powers_.find(key);
  if (it != powers_.end()) return it->second;
  return powers_[key] = convolution_power(law_[i], n, law_.types(), support_cap_);
}

Rational ProgenyCalculator::joint(const IntVec& r, const IntVec& n, const IntMatrix& offdiag) {
  const int d = law_.types();
  if (static_cast<int>(r.size()) != d) throw InvalidArgument("root vector has wrong size");
  check_progeny_event(r, n, offdiag);
  const LaplacianMatrix k = LaplacianMatrix::from_offdiagonal(r, offdiag);

  Rational product(1);
  for (int i = 0; i < d; ++i) {
    IntVec z(d);
    for (int j = 0; j < d; ++j) z[j] = i == j ? n[i] + k(i, i) : k(i, j);
    product *= mass_at(power(i, n[i]), z);
    if (product == 0) return product;
  }
  std::vector<int> keep;
  BigInt denom(1);
  for (int i = 0; i < d; ++i) {
    if (n[i] > 0) {
      keep.push_back(i);
      denom *= n[i];
    }
  }
  return product * Rational(k.det_minus(keep)) / Rational(denom);
}

Rational ProgenyCalculator::marginal(const IntVec& r, const IntVec& n) {
  const int d = law_.types();
  if (static_cast<int>(r.size()) != d || static_cast<int>(n.size()) != d)
    throw InvalidArgument("event vectors must have d entries");
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) cells.emplace_back(i, j);
  IntMatrix a = IntMatrix::square(d);
  Rational total(0);
  // Odometer over off-diagonal entries, each bounded by its column budget.
  while (true) {
    bool admissible = true;
    for (int j = 0; j < d && admissible; ++j) {
      int col = r[j];
      for (int i = 0; i < d; ++i)
        if (i != j) col += a(i, j);
      if (col > n[j]) admissible = false;
    }
    if (admissible) total += joint(r, n, a);
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      auto [i, j] = cells[c];
      if (++a(i, j) <= n[j] - r[j]) break;
      a(i, j) = 0;
    }
    if (c == cells.size()) break;
  }
  return total;
}

Rational progeny_law(const OffspringLaw& law, const IntVec& r, const IntVec& n,
                     const IntMatrix& offdiag) {
  ProgenyCalculator calc(law);
  return calc.joint(r, n, offdiag);
}

Rational marginal_progeny_law(const OffspringLaw& law, const IntVec& r, const IntVec& n) {
  ProgenyCalculator calc(law);
  return calc.marginal(r, n);
}

Rational otter_dwass_1type(const Distribution& nu, int k, int n) {
  if (k < 1 || k > n) throw InvalidArgument("need 1 <= k <= n");
  Rational mean(0);
  Rational total(0);
  for (const auto& [z, p] : nu) {
    if (z.size() != 1 || z[0] < 0) throw InvalidArgument("single-type law expected");
    mean += p * z[0];
    total += p;
  }
  if (total != 1) throw InvalidArgument("weights do not sum to 1");
  if (mean > 1) throw InvalidArgument("law is supercritical");
  const Distribution power = convolution_power(nu, n, 1);
  return ratio(k, n) * mass_at(power, IntVec{n - k});
}

ReducibleRegime reducible_regime(const OffspringLaw& law) {
  if (law.types() != 2) throw RegimeError("reducible formulas need a 2-type law");
  const Matrix<Rational> m = law.mean_matrix();
  if (m(1, 0) != 0) throw RegimeError("type 2 bears type 1 children (m_21 > 0)");
  return m(1, 1) == 0 ? ReducibleRegime::childless_type2 : ReducibleRegime::type2_only_type2;
}

Rational reducible_2type_laws(const OffspringLaw& law, int r1, int n1, int n2) {
  const ReducibleRegime regime = reducible_regime(law);
  if (r1 < 1 || n1 < r1 || n2 < 0) throw InvalidArgument("need 1 <= r1 <= n1 and n2 >= 0");
  const Distribution p1 = convolution_power(law[0], n1, 2);
  if (regime == ReducibleRegime::childless_type2)
    return ratio(r1, n1) * mass_at(p1, IntVec{n1 - r1, n2});
  if (n2 < 1) throw InvalidArgument("the convolution-sum formula needs n2 >= 1");
  const Distribution p2 = convolution_power(law[1], n2, 2);
  Rational total(0);
  for (int j = 1; j <= n2; ++j)
    total += Rational(j) * mass_at(p1, IntVec{n1 - r1, j}) * mass_at(p2, IntVec{0, n2 - j});
  return total * Rational(r1) / Rational(n1 * n2);
}

ProgenyEvent progeny_event(const TypedForest& f) {
  return ProgenyEvent{f.type_counts(), edge_type_counts(f)};
}

}  // namespace mtf
