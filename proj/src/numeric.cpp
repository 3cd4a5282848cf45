#include "mtf/numeric.hpp"

#include <cstdio>
#include <numeric>

namespace mtf {

BigInt factorial(long n) {
  if (n < 0) throw InvalidArgument("factorial of a negative number");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return BigInt(0);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigInt exact_quotient(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("division by zero");
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw Error("non-integral count: " + num.get_str() + " / " + den.get_str());
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ')) s.pop_back();
  while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
  if (s.empty()) throw InvalidArgument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_decimal(const Rational& q, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, q.get_d());
  return buf;
}

int sum(std::span<const int> v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace mtf
