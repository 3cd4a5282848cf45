#include <doctest.h>

#include "mtf/numeric.hpp"

using namespace mtf;

TEST_CASE("Bareiss determinant matches cofactor expansion") {
  Matrix<BigInt> m = Matrix<BigInt>::square(3);
  const int v[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
  CHECK(determinant(m) == 4);

  Matrix<BigInt> pivot = Matrix<BigInt>::square(2);
  pivot(0, 1) = 1;
  pivot(1, 0) = 1;
  CHECK(determinant(pivot) == -1);

  CHECK(determinant(Matrix<BigInt>::square(0)) == 1);
  Matrix<BigInt> singular = Matrix<BigInt>::square(2, BigInt(3));
  CHECK(determinant(singular) == 0);
}

TEST_CASE("ratio reduces to lowest terms") {
  CHECK(to_string(ratio(4, 8)) == "1/2");
  CHECK(to_string(ratio(-6, -3)) == "2/1");
  CHECK(ratio(2, 4) == Rational(1, 2));
  CHECK_THROWS_AS(ratio(1, 0), InvalidArgument);
}

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(1)) == "1/1");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
}

TEST_CASE("binomial and factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(exact_quotient(12, 4) == 3);
  CHECK_THROWS(exact_quotient(7, 2));
}
