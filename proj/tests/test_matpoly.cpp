#include "doctest.h"
#include "eqnoeth/matpoly.hpp"
#include "support.hpp"

using namespace eqnoeth;

namespace {

IntMatrix random_ut(testing::Rng& rng, int r, int range) {
  IntMatrix m = int_identity(r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) m(i, j) = testing::uniform(rng, -range, range);
  return m;
}

IntMatrix zero_matrix(int r) { return IntMatrix(r, BigInt(0)); }

}  // namespace

TEST_CASE("elementary matrix products") {
  CHECK(e_product(3, 1, 2, 2, 3) == elementary(3, 1, 3));
  CHECK(e_product(3, 1, 2, 1, 3) == zero_matrix(3));
  CHECK(e_product(3, 1, 2, 1, 2) == zero_matrix(3));
  CHECK_THROWS_AS(elementary(3, 2, 2), MatrixError);
  CHECK_THROWS_AS(elementary(3, 1, 4), MatrixError);
  for (int r = 2; r <= 5; ++r)
    for (int i = 1; i <= r; ++i)
      for (int j = i + 1; j <= r; ++j)
        for (int k = 1; k <= r; ++k)
          for (int l = k + 1; l <= r; ++l)
            CHECK(e_product(r, i, j, k, l) == (j == k ? elementary(r, i, l) : zero_matrix(r)));
}

TEST_CASE("commutator chains") {
  const auto b = build_B(5);
  const auto m = int_identity(5) + elementary(5, 1, 2);
  CHECK(comm_chain(m, b, 0) == m);
  CHECK(comm_chain(m, b, 2) == int_identity(5) + elementary(5, 1, 4));
  CHECK(comm_chain(m, b, 4) == int_identity(5));
  CHECK_THROWS_AS(comm_chain(m, build_B(4), 1), MatrixError);
}

TEST_CASE("unitriangular closure") {
  testing::Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = testing::uniform(rng, 1, 16);
    const auto x = random_ut(rng, r, 5), y = random_ut(rng, r, 5);
    const auto ut = int_ut(r);
    CHECK(is_unitriangular(x * y, BigInt(0), BigInt(1)));
    const auto xi = ut.inverse(x);
    CHECK(is_unitriangular(xi, BigInt(0), BigInt(1)));
    CHECK(x * xi == int_identity(r));
  }
}

TEST_CASE("G_1 table cells") {
  const auto t = g1_witness_table(3, 6);
  CHECK(t.identity[0][0]);
  CHECK_FALSE(t.identity[1][0]);
  CHECK_FALSE(t.identity[5][0]);
  CHECK(t.matches());
}

TEST_CASE("G_1 table agrees with the power-of-two criterion") {
  const auto t = g1_witness_table(4, 13);
  for (int n = 0; n <= 13; ++n)
    for (int m = 0; m <= 13; ++m) {
      const int s = n + m + 3;
      const bool power = s == 2 || s == 4 || s == 8 || s == 16;
      CHECK(static_cast<bool>(t.identity[n][m]) == !power);
    }
}

TEST_CASE("G_1 strict chain witness") {
  // (A_m, B, C) with m = 2^k - 2 solves s_0, ..., s_{2^k - 2} but not s_{2^k - 1}.
  const auto t = g1_witness_table(4, 15);
  for (int k = 1; k <= 3; ++k) {
    const int m = (1 << k) - 2;
    for (int n = 0; n <= m; ++n) CHECK(t.identity[n][m]);
    CHECK_FALSE(t.identity[m + 1][m]);
    CHECK(t.faithful[m + 1][m]);
  }
}

TEST_CASE("polynomial translation") {
  const auto p1 = word_to_polys(parse_word("X1"), 2);
  const auto names = matrix_variable_names(2, 1);
  CHECK(to_string(p1[0][1], names) == "X1[1,2]");
  const auto h1 = shat(parse_word("X1"), 2);
  CHECK(to_string(h1[0][0], names) == "X1[1,1] - 1");
  const auto p2 = word_to_polys(parse_word("X1 X2"), 2);
  const auto n2 = matrix_variable_names(2, 2);
  CHECK(to_string(p2[0][0], n2) == "X1[1,1]*X2[1,1] + X1[1,2]*X2[2,1]");
  const auto pe = word_to_polys(Word(1), 2);
  const auto he = shat(Word(1), 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(pe[i][j] == MultiPoly::constant(4, BigInt(i == j ? 1 : 0)));
      CHECK(he[i][j].is_zero());
    }
  CHECK_THROWS_AS(word_to_polys(parse_word("X1^-1"), 2), MatrixError);
}

TEST_CASE("polynomial translation commutes with evaluation over Z and Z/m") {
  testing::Rng rng(42);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = testing::uniform(rng, 1, 3), r = testing::uniform(rng, 1, 3);
    const Word s = testing::random_word(rng, n, 8, true);
    const auto polys = word_to_polys(s, r);
    std::vector<IntMatrix> mats;
    for (int k = 0; k < n; ++k) mats.push_back(random_ut(rng, r, 6));
    const auto value = evaluate(s, std::span<const IntMatrix>(mats), int_ut(r));
    std::vector<BigInt> vars(r * r * n);
    for (int m = 1; m <= n; ++m)
      for (int k = 1; k <= r; ++k)
        for (int l = 1; l <= r; ++l) vars[matrix_variable(r, m, k, l)] = mats[m - 1](k - 1, l - 1);
    const std::function<BigInt(const BigInt&)> lift = [](const BigInt& c) { return c; };
    const long long mod = 7;
    std::vector<ModInt> mvars;
    for (const auto& v : vars) mvars.emplace_back(static_cast<long long>(v % mod), mod);
    const std::function<ModInt(const BigInt&)> mlift = [&](const BigInt& c) {
      return ModInt(static_cast<long long>(c % mod), mod);
    };
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        CHECK(polys[i][j].evaluate<BigInt>(vars, BigInt(0), lift) == value(i, j));
        CHECK(polys[i][j].evaluate<ModInt>(mvars, ModInt(0, mod), mlift) ==
              ModInt(static_cast<long long>(value(i, j) % mod), mod));
      }
  }
}

TEST_CASE("cyclic ring commutators") {
  CHECK(nnsen_commutator(3, 1, 2));
  CHECK_FALSE(nnsen_commutator(3, 2, 1));
  CHECK(nnsen_commutator(3, 0, 0));
  for (int d = 0; d <= 6; ++d) {
    const auto t = nnsen_table(d);
    for (int j = 0; j <= d; ++j)
      for (int k = 0; k <= d; ++k) CHECK(static_cast<bool>(t[j][k]) == (j <= k));
  }
  CHECK(CyclicRingElement::x(3, 0) == CyclicRingElement::monomial(3, 0));
  CHECK_THROWS(nnsen_commutator(3, 4, 0));
}

TEST_CASE("BS(1,2) membership") {
  const auto t = bs12_table(10, 10);
  CHECK(t[0][0]);
  CHECK_FALSE(t[2][1]);
  CHECK(t[1][3]);
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= 10; ++m) CHECK(static_cast<bool>(t[n][m]) == (m >= n));
  const GL2Q gl;
  const auto a = bs12_a(), ti = gl.inverse(bs12_t());
  CHECK(ti * a * bs12_t() == a * a);
  CHECK_THROWS_AS(gl.inverse(rational_matrix(1, 2, 2, 4)), MatrixError);
}
