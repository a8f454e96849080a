#include "liecoh/serialize.hpp"
#include "liecoh/tensor_ops.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace liecoh;

namespace {

AltTensor random_alt(int degree, int dim, std::mt19937& rng) {
  AltTensor t(degree, dim);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for_each_combination(dim, degree, [&](const Index& idx) {
    Scalar v(Rational(num(rng), den(rng)));
    if (!v.is_zero()) t.set(idx, v);
  });
  return t;
}

} // namespace

TEST_CASE("antisymmetrize: frozen oracle and projector laws") {
  GeneralTensor t(2, 2);
  t.add({0, 1}, Scalar(1));
  AltTensor a = antisymmetrize(t);
  // (1/2!)(t01 - t10) = 1/2 on the canonical pair
  CHECK(a.component({0, 1}) == Scalar(1, 2));
  CHECK(a.component({1, 0}) == Scalar(-1, 2));
  CHECK(a.component({0, 0}).is_zero());

  SECTION("idempotent on alternating input") {
    std::mt19937 rng(1);
    AltTensor r = random_alt(3, 5, rng);
    GeneralTensor full(3, 5);
    // expand r to a complete component array
    for (const auto& [idx, v] : r.entries()) {
      Index p = idx;
      do {
        full.add(p, (permutation_sign(p) > 0) ? v : -v);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    CHECK(antisymmetrize(full) == r);
  }

  SECTION("degree above dim collapses to representable zero") {
    GeneralTensor over(3, 2);
    over.add({0, 1, 0}, Scalar(5));
    AltTensor z = antisymmetrize(over);
    CHECK(z.degree() == 3);
    CHECK(z.is_zero());
  }
}

TEST_CASE("symmetrize: frozen oracle and projector laws") {
  // Off-diagonal entries average over both arrangements; diagonal entries
  // have a two-element stabilizer, so a lone t_00 keeps its full weight.
  GeneralTensor t(2, 2);
  t.add({0, 1}, Scalar(1));
  t.add({0, 0}, Scalar(3));
  SymTensor s = symmetrize(t);
  CHECK(s.component({0, 1}) == Scalar(1, 2));
  CHECK(s.component({0, 0}) == Scalar(3));
  CHECK(s.component({1, 1}).is_zero());

  // t_001 = 6 with stabilizer 2!: weight 2/3! gives 2 on the multiset (0,0,1).
  GeneralTensor t3(3, 2);
  t3.add({0, 0, 1}, Scalar(6));
  CHECK(symmetrize(t3).component({0, 0, 1}) == Scalar(2));

  SECTION("idempotent on symmetric arrays, repeated indices included") {
    SymTensor r(3, 4);
    r.set({0, 0, 2}, Scalar(5, 7));
    r.set({1, 2, 3}, Scalar(-2));
    r.set({3, 3, 3}, Scalar(9, 4));
    GeneralTensor full(3, 4);
    for (const auto& [idx, v] : r.entries()) {
      Index p = idx;
      do {
        full.add(p, v);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    CHECK(symmetrize(full) == r);
  }
}

TEST_CASE("wedge: frozen normalization and graded ring laws") {
  const int dim = 4;
  AltTensor w1(1, dim), w2(1, dim), w3(1, dim);
  w1.set({0}, Scalar(1));
  w2.set({1}, Scalar(1));
  w3.set({2}, Scalar(1));

  AltTensor w12 = wedge(w1, w2);
  CHECK(w12.component({0, 1}) == Scalar(1)); // no combinatorial prefactor
  AltTensor w123 = wedge(w12, w3);
  CHECK(w123.component({0, 1, 2}) == Scalar(1));
  CHECK(w123.nnz() == 1);

  SECTION("wedge with zero annihilates") {
    AltTensor z(2, dim);
    CHECK(wedge(w1, z).is_zero());
  }

  SECTION("graded commutativity and associativity on random tensors") {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
      AltTensor a = random_alt(1, 5, rng), b = random_alt(2, 5, rng), c = random_alt(2, 5, rng);
      // a^b = (-1)^{pq} b^a with p=1,q=2 -> +1; and with two odd factors -> -1
      CHECK(wedge(a, b) == wedge(b, a));
      AltTensor ab = wedge(a, wedge(b, c));
      AltTensor ab2 = wedge(wedge(a, b), c);
      CHECK(ab == ab2);
      AltTensor d = random_alt(1, 5, rng);
      CHECK(wedge(a, d) == Scalar(-1) * wedge(d, a));
    }
  }

  SECTION("degree sum above dim gives zero") {
    std::mt19937 rng(3);
    AltTensor a = random_alt(2, 3, rng), b = random_alt(2, 3, rng);
    CHECK(wedge(a, b).is_zero());
  }
}

TEST_CASE("contract: raw kernel reproduces the epsilon identity") {
  AltTensor eps = epsilon_symbol(3, 3);
  GeneralTensor raw = contract(eps, eps, 2);
  // eps_{i c d} eps_{c d j} = 2 delta_{ij} in dim 3 (27-term brute force)
  REQUIRE(raw.degree() == 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(raw.component({i, j}) == (i == j ? Scalar(2) : Scalar()));

  SECTION("the alternating projection of that symmetric output is zero") {
    CHECK(alt_contract(eps, eps, 2).is_zero());
  }

  SECTION("contraction with a zero tensor is zero") {
    AltTensor z(2, 3);
    CHECK(contract(eps, z, 1).is_zero());
    CHECK(alt_contract(eps, z, 1).is_zero());
  }
}

TEST_CASE("alt_contract with shared=0 equals wedge exactly") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    AltTensor a = random_alt(2, 5, rng), b = random_alt(1, 5, rng);
    CHECK(alt_contract(a, b, 0) == wedge(a, b));
  }
}

TEST_CASE("metric contraction matches explicit raising") {
  // g = diag(2, 3, 5); contract a_{ic} g^{cd} b_{d} against hand expansion.
  Matrix g(3, 3);
  g.at(0, 0) = Scalar(2);
  g.at(1, 1) = Scalar(3);
  g.at(2, 2) = Scalar(5);
  AltTensor a(2, 3);
  a.set({0, 1}, Scalar(1));
  a.set({1, 2}, Scalar(-2));
  g.at(0, 1) = g.at(1, 0) = Scalar(1);
  AltTensor b(1, 3);
  b.set({1}, Scalar(7));
  GeneralTensor r = contract(a, b, 1, &g);
  // independent oracle: R_i = sum_{c,d} a_{ic} g_{cd} b_d by brute force
  for (int i = 0; i < 3; ++i) {
    Scalar want;
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) want += a.component({i, c}) * g.at(c, d) * b.component({d});
    CHECK(r.component({i}) == want);
  }
  CHECK(r.component({0}) == Scalar(21)); // hand value for one slot
}

TEST_CASE("epsilon symbol shape") {
  AltTensor e4 = epsilon_symbol(4, 4);
  CHECK(e4.component({0, 1, 2, 3}) == Scalar(1));
  CHECK(e4.component({1, 0, 2, 3}) == Scalar(-1));
  CHECK(epsilon_symbol(4, 3).is_zero());
}

TEST_CASE("apply_metric_all_slots raises every slot") {
  Matrix g(3, 3);
  g.at(0, 0) = Scalar(2);
  g.at(1, 1) = Scalar(3);
  g.at(2, 2) = Scalar(5);
  g.at(0, 1) = g.at(1, 0) = Scalar(1);
  AltTensor t(2, 3);
  t.set({0, 1}, Scalar(1));
  t.set({0, 2}, Scalar(4));
  AltTensor raised = apply_metric_all_slots(t, g);
  // brute-force check: raised_{ab} = sum_{cd} g_{ac} g_{bd} t_{cd}
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      Scalar want;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) want += g.at(x, c) * g.at(y, d) * t.component({c, d});
      CHECK(raised.component({x, y}) == want);
    }
}

TEST_CASE("tensor JSON round trip is canonical") {
  AltTensor t(2, 4);
  t.set({0, 2}, Scalar(Rational(-3, 7), Rational(1, 2)));
  t.set({1, 3}, Scalar(5));
  json j = to_json(t);
  CHECK(j["degree"] == 2);
  CHECK(j["dim"] == 4);
  CHECK(j["entries"][0]["re"] == "-3/7");
  CHECK(j["entries"][0]["im"] == "1/2");
  AltTensor back = alt_tensor_from_json(j);
  CHECK(back == t);
  CHECK(to_json(back).dump() == j.dump()); // byte-stable re-serialization
}
