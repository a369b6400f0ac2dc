#include "doctest.h"
#include "eqnoeth/metabelian.hpp"
#include "support.hpp"

using namespace eqnoeth;

namespace {

SemidirectProduct s3_split() { return semidirect_product(cyclic_group(3), cyclic_group(2), {{0, 1, 2}, {0, 2, 1}}); }
SemidirectProduct d4_split() {
  return semidirect_product(cyclic_group(4), cyclic_group(2), {{0, 1, 2, 3}, {0, 3, 2, 1}});
}
SemidirectProduct a4_split() {
  return semidirect_product(klein_four_group(), cyclic_group(3), {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}});
}

GroupRingElement random_ring_element(testing::Rng& rng, const FiniteGroup& p) {
  GroupRingElement u(p);
  for (int x = 0; x < p.order(); ++x) u.add(x, testing::uniform(rng, -3, 3));
  return u;
}

}  // namespace

TEST_CASE("group ring arithmetic") {
  const auto c2 = cyclic_group(2);
  const auto e = GroupRingElement::basis(c2, 0), g = GroupRingElement::basis(c2, 1);
  CHECK(ring_multiply(ring_add(e, g), ring_add(e, ring_scale(g, -1))).is_zero());
  CHECK(ring_multiply(g, g) == e);
  const auto sq = ring_multiply(ring_add(e, g), ring_add(e, g));
  CHECK(sq.coefficient(0) == 2);
  CHECK(sq.coefficient(1) == 2);
  CHECK_THROWS_AS(GroupRingElement::basis(c2, 2), RingError);
  CHECK_THROWS_AS(ring_add(e, GroupRingElement::basis(cyclic_group(3), 0)), RingError);
}

TEST_CASE("group ring is associative and distributive") {
  testing::Rng rng(51);
  const auto p = symmetric_group(3);
  for (int i = 0; i < 30; ++i) {
    const auto u = random_ring_element(rng, p), v = random_ring_element(rng, p), w = random_ring_element(rng, p);
    CHECK(ring_multiply(ring_multiply(u, v), w) == ring_multiply(u, ring_multiply(v, w)));
    CHECK(ring_multiply(u, ring_add(v, w)) == ring_add(ring_multiply(u, v), ring_multiply(u, w)));
  }
}

TEST_CASE("s_j coefficients") {
  const auto p = symmetric_group(3);
  const int a = 1, b = 2;
  {
    const std::vector<int> t{a};
    const auto s = s_j_coefficients(parse_word("X1", 1), p, t);
    CHECK(s[0] == GroupRingElement::basis(p, a));
  }
  {
    const std::vector<int> t{a, b};
    const auto s = s_j_coefficients(parse_word("X1 X2", 2), p, t);
    CHECK(s[0] == GroupRingElement::basis(p, p.multiply(a, b)));
    CHECK(s[1] == GroupRingElement::basis(p, b));
  }
  {
    const std::vector<int> t{a};
    const auto s = s_j_coefficients(parse_word("X1 X1", 1), p, t);
    CHECK(s[0] == ring_add(GroupRingElement::basis(p, p.multiply(a, a)), GroupRingElement::basis(p, a)));
  }
  const std::vector<int> t{a};
  CHECK_THROWS_AS(s_j_coefficients(parse_word("X1^-1", 1), p, t), RingError);
  CHECK_THROWS_AS(s_j_coefficients(parse_word("X1 X2", 2), p, t), RingError);
}

TEST_CASE("s_j coefficients respect concatenation") {
  // s_j(uv) = s_j(u) v(p) + s_j(v).
  testing::Rng rng(52);
  const auto p = alternating_group(4);
  for (int i = 0; i < 100; ++i) {
    const Word u = testing::random_word(rng, 3, 6, true), v = testing::random_word(rng, 3, 6, true);
    const auto t = testing::random_tuple(rng, p, 3);
    const auto su = s_j_coefficients(u, p, t), sv = s_j_coefficients(v, p, t), suv = s_j_coefficients(u * v, p, t);
    const auto vp = GroupRingElement::basis(p, evaluate(v, std::span<const int>(t), p));
    for (int j = 0; j < 3; ++j) CHECK(suv[j] == ring_add(ring_multiply(su[j], vp), sv[j]));
  }
}

TEST_CASE("module action") {
  testing::Rng rng(53);
  for (const auto& g : {s3_split(), d4_split(), a4_split()}) {
    for (int i = 0; i < 40; ++i) {
      const int a = testing::uniform(rng, 0, g.base.order() - 1), b = testing::uniform(rng, 0, g.base.order() - 1);
      const auto u = random_ring_element(rng, g.acting), v = random_ring_element(rng, g.acting);
      CHECK(module_act(g, a, ring_multiply(u, v)) == module_act(g, module_act(g, a, u), v));
      CHECK(module_act(g, a, ring_add(u, v)) == g.base.multiply(module_act(g, a, u), module_act(g, a, v)));
      CHECK(module_act(g, g.base.multiply(a, b), u) == g.base.multiply(module_act(g, a, u), module_act(g, b, u)));
    }
    CHECK(module_act(g, 1, GroupRingElement::basis(g.acting, 0)) == 1);
  }
  CHECK_THROWS_AS(module_act(s3_split(), 1, GroupRingElement::basis(cyclic_group(3), 0)), RingError);
}

TEST_CASE("split solution checks") {
  const auto g = s3_split();
  const Word s = parse_word("X1 X1", 1);
  for (int x = 0; x < 6; ++x) {
    const std::vector<int> t{x};
    const auto c = split_solution_check(s, g, t);
    CHECK(c.agree());
    CHECK(c.direct == (g.group.multiply(x, x) == 0));
  }
  const std::vector<int> t{1};
  CHECK_THROWS_AS(split_solution_check(parse_word("X1^-1", 1), g, t), RingError);
}

TEST_CASE("split decomposition agrees with direct evaluation") {
  testing::Rng rng(54);
  for (const auto& g : {s3_split(), d4_split(), a4_split()}) {
    for (int i = 0; i < 15; ++i) {
      const Word s = testing::random_word(rng, 2, 7, true);
      const auto sweep = split_sweep(s, g);
      CHECK(sweep.tuples == static_cast<std::size_t>(g.group.order() * g.group.order()));
      CHECK(sweep.disagreements == 0);
      CHECK_FALSE(sweep.first_disagreement.has_value());
    }
  }
}
