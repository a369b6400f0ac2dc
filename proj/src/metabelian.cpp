#include "eqnoeth/metabelian.hpp"

#include "eqnoeth/parallel.hpp"
#include "eqnoeth/varieties.hpp"

namespace eqnoeth {

GroupRingElement GroupRingElement::basis(const FiniteGroup& p, int x, long long coefficient) {
  GroupRingElement u(p);
  u.add(x, coefficient);
  return u;
}

long long GroupRingElement::coefficient(int x) const {
  auto it = c_.find(x);
  return it == c_.end() ? 0 : it->second;
}

void GroupRingElement::add(int x, long long k) {
  if (x < 0 || x >= group_.order()) throw RingError("group ring basis element out of range");
  if (k == 0) return;
  long long& v = c_[x];
  v += k;
  if (v == 0) c_.erase(x);
}

namespace {
void require_same(const GroupRingElement& u, const GroupRingElement& v) {
  if (!(u.group() == v.group())) throw RingError("group ring elements over different groups");
}
}  // namespace

GroupRingElement ring_add(const GroupRingElement& u, const GroupRingElement& v) {
  require_same(u, v);
  GroupRingElement w = u;
  for (auto [x, k] : v.coefficients()) w.add(x, k);
  return w;
}

GroupRingElement ring_scale(const GroupRingElement& u, long long k) {
  GroupRingElement w(u.group());
  for (auto [x, c] : u.coefficients()) w.add(x, c * k);
  return w;
}

GroupRingElement ring_multiply(const GroupRingElement& u, const GroupRingElement& v) {
  require_same(u, v);
  GroupRingElement w(u.group());
  for (auto [x, a] : u.coefficients())
    for (auto [y, b] : v.coefficients()) w.add(u.group().multiply(x, y), a * b);
  return w;
}

std::vector<GroupRingElement> s_j_coefficients(const Word& s, const FiniteGroup& p, std::span<const int> p_tuple) {
  if (!s.is_positive()) throw RingError("s_j coefficients need a positive word; positivize it first");
  if (p_tuple.size() != static_cast<std::size_t>(s.n_vars()))
    throw RingError("tuple length differs from the number of variables");
  for (int x : p_tuple)
    if (x < 0 || x >= p.order()) throw RingError("tuple element out of range");
  std::vector<GroupRingElement> out(s.n_vars(), GroupRingElement(p));
  int suffix = 0;
  const auto& letters = s.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    for (long long rep = 0; rep < it->exp; ++rep) {
      suffix = p.multiply(p_tuple[it->var - 1], suffix);
      out[it->var - 1].add(suffix, 1);
    }
  return out;
}

int module_act(const SemidirectProduct& g, int a, const GroupRingElement& u) {
  if (!(u.group() == g.acting)) throw RingError("group ring is not over the acting group");
  int acc = 0;
  for (auto [x, k] : u.coefficients()) acc = g.base.multiply(acc, g.base.power(g.act(a, x), k));
  return acc;
}

SplitCheck split_solution_check(const Word& s, const SemidirectProduct& g, std::span<const int> tuple) {
  if (!s.is_positive()) throw RingError("split_solution_check needs a positive word");
  if (tuple.size() != static_cast<std::size_t>(s.n_vars()))
    throw RingError("tuple length differs from the number of variables");
  SplitCheck out;
  out.direct = evaluate(s, tuple, g.group) == 0;

  std::vector<int> ps(tuple.size()), as(tuple.size());
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (tuple[j] < 0 || tuple[j] >= g.group.order()) throw RingError("tuple element out of range");
    ps[j] = g.acting_part(tuple[j]);
    as[j] = g.base_part(tuple[j]);
  }
  if (evaluate(s, std::span<const int>(ps), g.acting) != 0) return out;
  auto sj = s_j_coefficients(s, g.acting, ps);
  int sum = 0;
  for (std::size_t j = 0; j < tuple.size(); ++j) sum = g.base.multiply(sum, module_act(g, as[j], sj[j]));
  out.decomposed = sum == 0;
  return out;
}

SplitSweep split_sweep(const Word& s, const SemidirectProduct& g) {
  const int order = g.group.order();
  const std::size_t total = tuple_space_size(order, s.n_vars());
  struct Part {
    std::size_t solutions = 0, disagreements = 0;
    std::optional<std::vector<int>> first;
  };
  std::vector<Part> parts(chunk_count(total));
  parallel_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    auto& part = parts[chunk];
    for (std::size_t k = begin; k < end; ++k) {
      auto t = tuple_at(k, order, s.n_vars());
      auto c = split_solution_check(s, g, t);
      if (c.direct) ++part.solutions;
      if (!c.agree()) {
        ++part.disagreements;
        if (!part.first) part.first = t;
      }
    }
  });
  SplitSweep out;
  out.tuples = total;
  for (auto& p : parts) {
    out.solutions += p.solutions;
    out.disagreements += p.disagreements;
    if (!out.first_disagreement && p.first) out.first_disagreement = p.first;
  }
  return out;
}

}  // namespace eqnoeth
