#include "liecoh/matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace liecoh;

namespace {

Matrix mat2(long a, long b, long c, long d) {
  Matrix m(2, 2);
  m.at(0, 0) = Scalar(a);
  m.at(0, 1) = Scalar(b);
  m.at(1, 0) = Scalar(c);
  m.at(1, 1) = Scalar(d);
  return m;
}

} // namespace

TEST_CASE("rank of hand-checked matrices") {
  Matrix m(3, 3);
  // rows: (1,2,3), (2,4,6), (0,1,1) -> rank 2
  int vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.at(r, c) = Scalar(vals[r][c]);
  CHECK(m.rank() == 2);
  CHECK(Matrix::identity(5).rank() == 5);
  CHECK(Matrix::zero(4).rank() == 0);
}

TEST_CASE("inverse and solve are exact") {
  Matrix m = mat2(1, 2, 3, 5); // det = -1
  Matrix inv = m.inverse();
  CHECK(m * inv == Matrix::identity(2));

  auto x = m.solve({Scalar(7), Scalar(18)});
  REQUIRE(x.has_value());
  CHECK(m.at(0, 0) * (*x)[0] + m.at(0, 1) * (*x)[1] == Scalar(7));
  CHECK(m.at(1, 0) * (*x)[0] + m.at(1, 1) * (*x)[1] == Scalar(18));

  // inconsistent system
  Matrix s(2, 1);
  s.at(0, 0) = Scalar(1);
  s.at(1, 0) = Scalar(1);
  CHECK_FALSE(s.solve({Scalar(1), Scalar(2)}).has_value());

  CHECK_THROWS_AS(mat2(1, 2, 2, 4).inverse(), std::domain_error);
}

TEST_CASE("nullspace basis spans the kernel") {
  Matrix m(2, 4);
  // x0 + x1 = 0, x2 - x3 = 0 -> kernel dim 2
  m.at(0, 0) = Scalar(1);
  m.at(0, 1) = Scalar(1);
  m.at(1, 2) = Scalar(1);
  m.at(1, 3) = Scalar(-1);
  auto basis = m.nullspace();
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis) {
    for (int r = 0; r < 2; ++r) {
      Scalar acc;
      for (int c = 0; c < 4; ++c) acc += m.at(r, c) * v[c];
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("complex entries eliminate exactly") {
  Matrix m(2, 2);
  m.at(0, 0) = Scalar::i();
  m.at(0, 1) = Scalar(1);
  m.at(1, 0) = Scalar(-1);
  m.at(1, 1) = Scalar::i();
  // second row = i * first row -> rank 1
  CHECK(m.rank() == 1);
}

TEST_CASE("minor determinants by permutation sum") {
  Matrix m(3, 3);
  int vals[3][3] = {{2, 0, 1}, {1, 3, 0}, {0, 1, 4}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.at(r, c) = Scalar(vals[r][c]);
  CHECK(minor_det(m, {0, 1}, {0, 1}) == Scalar(6));
  CHECK(minor_det(m, {0, 1, 2}, {0, 1, 2}) == Scalar(2 * 12 - 0 + 1 * 1));
  CHECK(minor_det(m, {}, {}) == Scalar(1));
}

TEST_CASE("modular rank agrees with exact rank on random rational matrices") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  const std::uint64_t p = modular::random_prime(20260816);
  const std::uint64_t iu = modular::imaginary_unit(p);
  REQUIRE(modular::mulmod(iu, iu, p) == p - 1);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m(5, 7);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 7; ++c)
        m.at(r, c) = Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    // plant a dependent row
    for (int c = 0; c < 7; ++c) m.at(4, c) = m.at(0, c) + m.at(1, c);
    std::vector<std::vector<std::uint64_t>> mm(5, std::vector<std::uint64_t>(7));
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 7; ++c) mm[r][c] = modular::residue(m.at(r, c), p, iu);
    CHECK(modular::rank(mm, p) == m.rank());
  }
}
