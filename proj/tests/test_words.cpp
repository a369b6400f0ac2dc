#include "doctest.h"
#include "eqnoeth/fingrp.hpp"
#include "eqnoeth/words.hpp"
#include "support.hpp"

using namespace eqnoeth;
using eqnoeth::testing::Rng;

namespace {
Word W(const char* s, int n = 0) { return parse_word(s, n); }
}  // namespace

TEST_CASE("free reduction") {
  CHECK(W("X1 X1^-1").empty());
  CHECK(to_string(W("X1 X2 X2^-1 X1")) == "X1^2");
  CHECK(to_string(commutator(W("X1", 2), W("X2", 2))) == "X1^-1 X2^-1 X1 X2");
  CHECK(to_string(W("[X1,X2]")) == "X1^-1 X2^-1 X1 X2");
  const std::vector<Letter> zero{{1, 2}, {2, 0}, {1, -2}};
  CHECK(reduce(2, zero).empty());
}

TEST_CASE("reduce is idempotent and parse/print round-trips") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Word w = testing::random_word(rng, 3, 12, false);
    CHECK(reduce(w) == w);
    CHECK(parse_word(to_string(w), 3) == w);
  }
}

TEST_CASE("evaluation in S_3") {
  const auto s3 = symmetric_group(3);
  CHECK(evaluate(Word(2), std::vector<int>{3, 4}, s3) == 0);
  // Two distinct transpositions have a 3-cycle as commutator.
  std::vector<int> transpositions, three_cycles;
  for (int x = 1; x < 6; ++x) (s3.element_order(x) == 2 ? transpositions : three_cycles).push_back(x);
  REQUIRE(transpositions.size() == 3);
  const std::vector<int> t{transpositions[0], transpositions[1]};
  const int c = evaluate(W("[X1,X2]"), std::span<const int>(t), s3);
  CHECK(s3.element_order(c) == 3);
  CHECK(evaluate(W("X1 X2"), std::span<const int>(t), s3) == s3.multiply(t[0], t[1]));
  CHECK_THROWS_AS(evaluate(W("X1 X2"), std::vector<int>{1}, s3), WordError);
}

TEST_CASE("evaluation respects concatenation") {
  Rng rng(12);
  const auto g = alternating_group(4);
  for (int i = 0; i < 200; ++i) {
    const Word u = testing::random_word(rng, 3, 8, false), v = testing::random_word(rng, 3, 8, false);
    const auto t = testing::random_tuple(rng, g, 3);
    CHECK(evaluate(u * v, std::span<const int>(t), g) ==
          g.multiply(evaluate(u, std::span<const int>(t), g), evaluate(v, std::span<const int>(t), g)));
  }
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(W("[X1,X2]")) == std::vector<long long>{0, 0});
  CHECK(exponent_sum(W("X1^2 X2^-1")) == std::vector<long long>{2, -1});
  const std::vector<Word> chain{W("X1", 3), W("X2", 3), W("X2", 3), W("X3", 3)};
  CHECK(exponent_sum(simple_commutator(chain)) == std::vector<long long>{0, 0, 0});
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Word u = testing::random_word(rng, 3, 8, false), v = testing::random_word(rng, 3, 8, false);
    auto a = exponent_sum(u), b = exponent_sum(v), c = exponent_sum(u * v);
    for (int j = 0; j < 3; ++j) CHECK(c[j] == a[j] + b[j]);
  }
}

TEST_CASE("positivization") {
  CHECK(to_string(positivize(W("X1 X2^-1", 2))) == "X1 X4");
  CHECK(to_string(positivize(W("X1^-1", 1))) == "X2");
  CHECK(positivize(W("X1 X2^3", 2)) == W("X1 X2^3", 4));
}

TEST_CASE("positivization preserves solutions on small groups") {
  Rng rng(14);
  const std::vector<FiniteGroup> groups{cyclic_group(4), symmetric_group(3), dihedral_group(4), klein_four_group()};
  for (int i = 0; i < 20; ++i) {
    const Word s = testing::random_word(rng, 2, 8, false);
    const Word p = positivize(s);
    CHECK(p.is_positive());
    for (const auto& g : groups)
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
          const std::vector<int> t{a, b}, tt{a, b, g.inverse(a), g.inverse(b)};
          CHECK((evaluate(s, std::span<const int>(t), g) == 0) == (evaluate(p, std::span<const int>(tt), g) == 0));
        }
  }
}

TEST_CASE("zero-sum transform") {
  {
    const std::vector<Word> basis{W("X1", 1)};
    const auto r = zero_sum_transform(W("X1^2", 1), basis);
    CHECK(r.alpha == std::vector<long long>{-2});
    CHECK(r.word.empty());
  }
  {
    const std::vector<Word> basis{W("X1 X2", 2)};
    const auto r = zero_sum_transform(W("X1 X2 X1 X2", 2), basis);
    CHECK(r.alpha == std::vector<long long>{-2});
    CHECK(exponent_sum(r.word) == std::vector<long long>{0, 0});
  }
  {
    const std::vector<Word> basis{W("X1^2", 2)};
    const auto r = zero_sum_transform(W("[X1,X2]", 2), basis);
    CHECK(r.alpha == std::vector<long long>{0});
    CHECK(r.word == W("[X1,X2]", 2));
  }
  const std::vector<Word> even{W("X1^2", 1)};
  CHECK_THROWS_AS(zero_sum_transform(W("X1", 1), even), LatticeError);
}

TEST_CASE("zero-sum transform is pointwise the stated product") {
  Rng rng(15);
  const auto g = symmetric_group(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Word> basis{testing::random_word(rng, 2, 5, false), testing::random_word(rng, 2, 5, false),
                            W("X1", 2), W("X2", 2)};
    const Word s = testing::random_word(rng, 2, 8, false);
    const auto r = zero_sum_transform(s, basis);
    CHECK(exponent_sum(r.word) == std::vector<long long>{0, 0});
    const auto t = testing::random_tuple(rng, g, 2);
    int expect = 0;
    for (std::size_t k = 0; k < basis.size(); ++k)
      expect = g.multiply(expect, g.power(evaluate(basis[k], std::span<const int>(t), g), r.alpha[k]));
    expect = g.multiply(expect, evaluate(s, std::span<const int>(t), g));
    CHECK(evaluate(r.word, std::span<const int>(t), g) == expect);
  }
}

TEST_CASE("simple commutators") {
  const std::vector<Word> one{W("X1 X2", 2)};
  CHECK(simple_commutator(one) == W("X1 X2", 2));
  const std::vector<Word> two{W("X1", 2), W("X2", 2)};
  CHECK(to_string(simple_commutator(two)) == "X1^-1 X2^-1 X1 X2");
  const std::vector<Word> three{W("X1", 3), W("X2", 3), W("X3", 3)};
  CHECK(simple_commutator(three) == commutator(commutator(W("X1", 3), W("X2", 3)), W("X3", 3)));
  CHECK_THROWS(simple_commutator(std::vector<Word>{}));
}

TEST_CASE("mixed words and parse errors") {
  const auto m = parse_mixed_word("X1 g0 g1 X1^-1");
  CHECK(m.has_coefficients());
  CHECK(m.pieces().size() == 3);
  const auto g = cyclic_group(5);
  const std::vector<int> coeff{1, 2}, t{3};
  CHECK(evaluate(m, std::span<const int>(t), std::span<const int>(coeff), g) == 3);
  CHECK(exponent_sum(m) == std::vector<long long>{0});
  CHECK(to_string(parse_mixed_word(to_string(m))) == to_string(m));
  CHECK_THROWS_AS(parse_word("X1 g0"), WordError);
  try {
    parse_word("X1 ^ ^");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
  const auto sys = parse_system("X1^2  # squares\n\n[X1,X2]\n");
  CHECK(sys.n_vars == 2);
  CHECK(sys.equations.size() == 2);
}
