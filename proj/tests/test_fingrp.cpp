#include "doctest.h"
#include "eqnoeth/fingrp.hpp"
#include "support.hpp"

using namespace eqnoeth;

TEST_CASE("validation") {
  CHECK(FiniteGroup::validate({{0, 1}, {1, 0}}).order() == 2);
  CHECK(FiniteGroup::validate(symmetric_group(3).table()).order() == 6);
  auto v4 = klein_four_group().table();
  std::swap(v4[1][2], v4[1][3]);
  try {
    FiniteGroup::validate(v4);
    FAIL("perturbed table accepted");
  } catch (const GroupError& e) {
    CHECK(e.kind() == GroupError::Kind::NotAssociative);
    CHECK(e.witness().size() == 3);
  }
  CHECK_THROWS_AS(FiniteGroup::validate({{0, 1}, {1, 1}}), GroupError);
  CHECK_THROWS_AS(FiniteGroup::validate({{0, 1}}), GroupError);
  CHECK_THROWS_AS(FiniteGroup::validate({{1, 0}, {0, 1}}), GroupError);
}

TEST_CASE("generated subgroups") {
  const auto s3 = symmetric_group(3);
  CHECK(subgroup_generated(s3, std::vector<int>{}).order() == 1);
  std::vector<int> tr, cyc;
  for (int x = 1; x < 6; ++x) (s3.element_order(x) == 2 ? tr : cyc).push_back(x);
  CHECK(subgroup_generated(s3, std::vector<int>{cyc[0]}).order() == 3);
  CHECK(subgroup_generated(s3, std::vector<int>{tr[0], tr[1]}).order() == 6);
  CHECK(normal_closure(s3, std::vector<int>{tr[0]}).order() == 6);
}

TEST_CASE("subgroup generation is a closure operator") {
  testing::Rng rng(21);
  const auto g = symmetric_group(4);
  for (int i = 0; i < 50; ++i) {
    std::vector<int> a{testing::uniform(rng, 0, 23)}, b = a;
    b.push_back(testing::uniform(rng, 0, 23));
    const auto ha = subgroup_generated(g, a), hb = subgroup_generated(g, b);
    for (int x : ha.elements()) CHECK(hb.contains(x));
    CHECK(subgroup_generated(g, ha.elements()) == ha);
    for (int x : a) CHECK(ha.contains(x));
  }
}

TEST_CASE("quotients") {
  const auto s3 = symmetric_group(3);
  const auto a3 = subgroup_generated(s3, std::vector<int>{[&] {
                                       for (int x = 1; x < 6; ++x)
                                         if (s3.element_order(x) == 3) return x;
                                       return 0;
                                     }()});
  const auto q = quotient(s3, a3);
  CHECK(q.group.order() == 2);
  for (int x = 0; x < 6; ++x) CHECK(q.projection(x) == (a3.contains(x) ? 0 : 1));
  const auto qt = quotient(s3, Subgroup(s3, {0}));
  CHECK(qt.group == s3);
  const auto t = subgroup_generated(s3, std::vector<int>{1});
  if (!is_normal(t)) {
    try {
      quotient(s3, t);
      FAIL("non-normal quotient accepted");
    } catch (const GroupError& e) {
      CHECK(e.kind() == GroupError::Kind::NotNormal);
    }
  }
}

TEST_CASE("projection kernels equal normal closures") {
  testing::Rng rng(22);
  for (const auto& g : {symmetric_group(4), dihedral_group(6), alternating_group(4), dihedral_group(12)}) {
    for (int i = 0; i < 10; ++i) {
      const std::vector<int> gens{testing::uniform(rng, 0, g.order() - 1)};
      const auto n = normal_closure(g, gens);
      CHECK(is_normal(n));
      CHECK(quotient(g, n).projection.kernel() == n);
    }
  }
}

TEST_CASE("lower central series") {
  CHECK(lower_central_series(cyclic_group(1)).nilpotency_class == 0);
  const auto d4 = lower_central_series(dihedral_group(4));
  CHECK(d4.nilpotent);
  CHECK(d4.nilpotency_class == 2);
  const auto s3 = lower_central_series(symmetric_group(3));
  CHECK_FALSE(s3.nilpotent);
  CHECK(s3.terms.back().order() == 3);
  for (const auto& g : {symmetric_group(4), dihedral_group(8), alternating_group(4)}) {
    const auto cs = lower_central_series(g);
    for (std::size_t i = 0; i < cs.terms.size(); ++i) {
      CHECK(is_normal(cs.terms[i]));
      if (i > 0) CHECK(cs.terms[i].order() < cs.terms[i - 1].order());
    }
  }
}

TEST_CASE("semidirect products") {
  const auto c3 = cyclic_group(3), c2 = cyclic_group(2);
  const auto s = semidirect_product(c3, c2, {{0, 1, 2}, {0, 2, 1}});
  CHECK(s.group.order() == 6);
  CHECK_FALSE(s.group.is_abelian());
  CHECK(lower_central_series(s.group).terms.back().order() == 3);

  const auto d = semidirect_product(c3, c2, {{0, 1, 2}, {0, 1, 2}});
  CHECK(d.group.is_abelian());

  const auto v4 = klein_four_group();
  const auto a4 = semidirect_product(v4, c3, {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}});
  CHECK(a4.group.order() == 12);
  int involutions = 0;
  for (int x = 0; x < 12; ++x) involutions += a4.group.element_order(x) == 2;
  CHECK(involutions == 3);  // as in A_4
  CHECK(is_normal(a4.base_embedding().image()));
  CHECK(intersect(a4.base_embedding().image(), a4.complement_embedding().image()).is_trivial());
  // (a,p)(a',p') = (a + a'^{p^{-1}}, pp') for every pair.
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) {
      const int a = a4.base_part(x), p = a4.acting_part(x), a2 = a4.base_part(y), p2 = a4.acting_part(y);
      const int expect = a4.pair(v4.multiply(a, a4.act(a2, c3.inverse(p))), c3.multiply(p, p2));
      CHECK(a4.group.multiply(x, y) == expect);
    }
  CHECK_THROWS_AS(semidirect_product(c3, c2, {{0, 1, 2}, {0, 1, 1}}), GroupError);
  CHECK_THROWS_AS(semidirect_product(c3, c2, {{0, 2, 1}, {0, 2, 1}}), GroupError);
}

TEST_CASE("named groups and JSON") {
  CHECK(named_group("S4").order() == 24);
  CHECK(named_group("Dih4").order() == 8);
  CHECK(named_group("A5").order() == 60);
  CHECK_THROWS(named_group("Q8x"));
  const auto g = dihedral_group(5);
  CHECK(group_from_json(group_to_json(g)) == g);
  CHECK(group_from_json(nlohmann::json("C5")) == cyclic_group(5));
}

TEST_CASE("homomorphisms") {
  const auto s3 = symmetric_group(3), c2 = cyclic_group(2);
  std::vector<int> sign(6);
  for (int x = 0; x < 6; ++x) sign[x] = s3.element_order(x) == 2 ? 1 : 0;
  const Homomorphism h(s3, c2, sign);
  CHECK(h.kernel().order() == 3);
  CHECK_FALSE(h.injective());
  std::vector<int> bad(6, 1);
  bad[0] = 0;
  CHECK_THROWS_AS(Homomorphism(s3, c2, bad), GroupError);
  const auto emb = subgroup_as_group(h.kernel());
  CHECK(emb.group.order() == 3);
  CHECK(emb.inclusion.injective());
}
