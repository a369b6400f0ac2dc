#include <algorithm>

#include "doctest.h"
#include "eqnoeth/varieties.hpp"
#include "eqnoeth/wreath.hpp"
#include "support.hpp"

using namespace eqnoeth;

namespace {

EquationSystem sys(const char* text, int n = 0) { return parse_system(text, n); }

std::vector<Tuple> brute_force(const EquationSystem& s, const FiniteGroup& g, const std::vector<int>& target) {
  std::vector<Tuple> out;
  const auto total = tuple_space_size(g.order(), s.n_vars);
  for (std::size_t k = 0; k < total; ++k) {
    const auto t = tuple_at(k, g.order(), s.n_vars);
    bool ok = true;
    for (const auto& w : s.equations) {
      const int v = evaluate(w.to_word(), std::span<const int>(t), g);
      if (!std::binary_search(target.begin(), target.end(), v)) ok = false;
    }
    if (ok) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("solution sets") {
  EquationSystem empty;
  empty.n_vars = 2;
  CHECK(solution_set(empty, symmetric_group(3)).size() == 36);
  CHECK(solution_set(sys("[X1,X2]"), symmetric_group(3)).size() == 18);
  CHECK(solution_set(sys("X1^2"), cyclic_group(2)).size() == 2);
  const auto v = solution_set(sys("X1^3"), symmetric_group(3));
  CHECK(v.size() == 3);
  CHECK(std::is_sorted(v.tuples.begin(), v.tuples.end()));
}

TEST_CASE("solution sets with coefficients") {
  const auto g = cyclic_group(6);
  // X1 g0 = 1 with g0 = 2 has the single solution X1 = 4.
  const auto v = solution_set(sys("X1 g0"), g, std::vector<int>{2});
  REQUIRE(v.size() == 1);
  CHECK(v.tuples[0] == Tuple{4});
  CHECK_THROWS(solution_set(sys("X1 g1"), g, std::vector<int>{2}));
}

TEST_CASE("quasi solution sets") {
  const auto s3 = symmetric_group(3);
  std::vector<int> all(6);
  std::iota(all.begin(), all.end(), 0);
  CHECK(quasi_solution_set(sys("[X1,X2]"), s3, all).size() == 36);
  std::vector<int> a3;
  for (int x = 0; x < 6; ++x)
    if (s3.element_order(x) != 2) a3.push_back(x);
  CHECK(quasi_solution_set(sys("X1"), s3, a3).size() == 3);
  CHECK(quasi_solution_set(sys("[X1,X2]"), klein_four_group(), std::vector<int>{1}).size() == 0);
}

TEST_CASE("brute-force oracle and set identities") {
  testing::Rng rng(31);
  const std::vector<FiniteGroup> groups{symmetric_group(3), dihedral_group(4), cyclic_group(8), klein_four_group()};
  for (int trial = 0; trial < 12; ++trial) {
    const auto& g = groups[trial % groups.size()];
    EquationSystem s, t, st;
    s.n_vars = t.n_vars = st.n_vars = 2;
    for (int i = 0; i < 2; ++i) s.equations.push_back(testing::random_word(rng, 2, 6, false));
    t.equations.push_back(testing::random_word(rng, 2, 6, false));
    st.equations = s.equations;
    st.equations.push_back(t.equations[0]);
    std::vector<int> id{0};
    const auto vs = solution_set(s, g), vt = solution_set(t, g), vst = solution_set(st, g);
    CHECK(vs.tuples == brute_force(s, g, id));
    std::vector<Tuple> inter;
    std::set_intersection(vs.tuples.begin(), vs.tuples.end(), vt.tuples.begin(), vt.tuples.end(),
                          std::back_inserter(inter));
    CHECK(vst.tuples == inter);
    for (const auto& x : vst.tuples) CHECK(vs.contains(x));

    // Target intersection identity.
    std::vector<int> a, b, ab;
    for (int x = 0; x < g.order(); ++x) {
      if (testing::uniform(rng, 0, 1)) a.push_back(x);
      if (testing::uniform(rng, 0, 1)) b.push_back(x);
    }
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(ab));
    const auto qa = quasi_solution_set(s, g, a), qb = quasi_solution_set(s, g, b), qab = quasi_solution_set(s, g, ab);
    std::vector<Tuple> qi;
    std::set_intersection(qa.tuples.begin(), qa.tuples.end(), qb.tuples.begin(), qb.tuples.end(),
                          std::back_inserter(qi));
    CHECK(qab.tuples == qi);
    CHECK(qa.tuples == brute_force(s, g, a));
  }
}

TEST_CASE("preimage identity for quasi solution sets") {
  // V_{G, φ^{-1}(A)}(T) is the union of the boxes φ^{-1}(h_1) x φ^{-1}(h_2)
  // over (h_1, h_2) in V_{H, A}(T).
  testing::Rng rng(32);
  const auto g = dihedral_group(6);
  const auto z = subgroup_generated(g, std::vector<int>{[&] {
                                      for (int x = 0; x < g.order(); ++x)
                                        if (g.element_order(x) == 3) return x;
                                      return 0;
                                    }()});
  const auto q = quotient(g, z);
  const auto& phi = q.projection;
  for (int trial = 0; trial < 10; ++trial) {
    EquationSystem t;
    t.n_vars = 2;
    t.equations.push_back(testing::random_word(rng, 2, 6, false));
    std::vector<int> a;
    for (int x = 0; x < q.group.order(); ++x)
      if (testing::uniform(rng, 0, 1)) a.push_back(x);
    const auto pre = phi.preimage(a);
    const auto lhs = quasi_solution_set(t, g, pre);
    const auto vh = quasi_solution_set(t, q.group, a);
    std::vector<Tuple> rhs;
    for (const auto& h : vh.tuples)
      for (int x : phi.preimage(std::vector<int>{h[0]}))
        for (int y : phi.preimage(std::vector<int>{h[1]})) rhs.push_back({x, y});
    std::sort(rhs.begin(), rhs.end());
    CHECK(lhs.tuples == rhs);
  }
}

TEST_CASE("minimal subsystems") {
  {
    const std::vector<FamilyMember> fam{{"C2", cyclic_group(2), {}}};
    const auto r = minimal_subsystem(sys("X1\nX1^2"), fam);
    CHECK(r.indices == std::vector<int>{0});
  }
  {
    const std::vector<FamilyMember> fam{{"C2", cyclic_group(2), {}}, {"C3", cyclic_group(3), {}}};
    const auto r = minimal_subsystem(sys("X1^2\nX1^3"), fam);
    CHECK(r.indices == std::vector<int>{0, 1});
    REQUIRE(r.necessity.size() == 2);
    // Without X1^2 a generator of C_3 slips through; without X1^3 the
    // generator of C_2 does.
    CHECK(r.necessity[0].member == 1);
    CHECK(r.necessity[0].equation == 0);
    CHECK(r.necessity[1].member == 0);
    CHECK(r.necessity[1].equation == 1);
    const auto c3 = cyclic_group(3);
    const auto& w0 = r.necessity[0];
    CHECK(c3.power(w0.tuple[0], 3) == 0);
    CHECK(c3.power(w0.tuple[0], 2) != 0);
  }
}

TEST_CASE("truncated commutator chain needs its last equation in a finite wreath quotient") {
  // C_2 wr C_2^3 realizes a finite analogue of the chain: [X1, h_i] for the
  // three base generators; the spread over the first i generators separates.
  const auto c2 = cyclic_group(2);
  const auto base = direct_product(direct_product(c2, c2).group, c2).group;
  const auto t = finite_wreath_table(c2, base);
  std::vector<int> hs;
  for (int gen : {4, 2, 1}) hs.push_back(t.encode(t.wreath.base_element(gen)));
  std::vector<FamilyMember> fam{{"C2 wr C2^3", t.group, hs}};
  const auto r = minimal_subsystem(sys("[X1,g0]\n[X1,g1]\n[X1,g2]", 1), fam);
  CHECK(r.indices.back() == 2);
}
