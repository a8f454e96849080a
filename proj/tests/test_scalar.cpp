#include "liecoh/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace liecoh;

namespace {

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 9);
  return Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

} // namespace

TEST_CASE("scalar arithmetic is exact and normalized") {
  Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK(Scalar(2, 4) == Scalar(1, 2)); // canonical form
  CHECK((Scalar(1) / Scalar(3)) * Scalar(3) == Scalar(1));

  Scalar i = Scalar::i();
  CHECK(i * i == Scalar(-1));
  CHECK((Scalar(1) + i) * (Scalar(1) - i) == Scalar(2));
  CHECK((Scalar(3) + Scalar(4) * i).norm2() == Rational(25));
}

TEST_CASE("field axioms hold on randomized Gaussian rationals") {
  std::mt19937 rng(20260816);
  for (int trial = 0; trial < 200; ++trial) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK((a * a.conj()).is_real());
  }
}

TEST_CASE("division by zero is rejected") {
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("rational string round trip") {
  Scalar v(Rational(-7, 3), Rational(5, 2));
  CHECK(Scalar::rational_str(v.re()) == "-7/3");
  CHECK(Scalar::parse_rational("-7/3") == v.re());
  CHECK(Scalar::parse_rational("4") == Rational(4));
  CHECK(Scalar::rational_str(Rational(0)) == "0/1");
}

TEST_CASE("factorial and binomial helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(15, 7) == 6435);
  CHECK(binomial(3, 5) == 0);
}
