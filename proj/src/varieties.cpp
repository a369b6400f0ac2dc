#include "eqnoeth/varieties.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "eqnoeth/parallel.hpp"

namespace eqnoeth {

namespace {

constexpr std::size_t kMaxTuples = std::size_t{1} << 32;

void check_coefficients(const EquationSystem& s, const FiniteGroup& g, std::span<const int> coefficients) {
  for (int c : coefficients)
    if (c < 0 || c >= g.order())
      throw VarietyError("coefficient " + std::to_string(c) + " is not an element of a group of order " +
                         std::to_string(g.order()));
  for (const auto& eq : s.equations)
    for (const auto& piece : eq.pieces())
      if (const auto* c = std::get_if<Coefficient>(&piece))
        for (const auto& f : c->factors)
          if (f.token < 0 || static_cast<std::size_t>(f.token) >= coefficients.size())
            throw VarietyError("equation uses g" + std::to_string(f.token) + " but only " +
                               std::to_string(coefficients.size()) + " coefficients were supplied");
}

// Equations in increasing length: cheap ones reject most tuples.
std::vector<const MixedWord*> by_length(const EquationSystem& s) {
  std::vector<const MixedWord*> out;
  for (const auto& e : s.equations) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(),
                   [](const MixedWord* a, const MixedWord* b) { return a->length() < b->length(); });
  return out;
}

template <class Accept>
std::vector<Tuple> enumerate(const FiniteGroup& g, int n_vars, const Accept& accept) {
  const std::size_t total = tuple_space_size(g.order(), n_vars);
  std::vector<std::vector<Tuple>> parts(chunk_count(total));
  parallel_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    auto& out = parts[chunk];
    for (std::size_t k = begin; k < end; ++k) {
      Tuple t = tuple_at(k, g.order(), n_vars);
      if (accept(t)) out.push_back(std::move(t));
    }
  });
  std::vector<Tuple> all;
  for (auto& p : parts)
    for (auto& t : p) all.push_back(std::move(t));
  return all;
}

}  // namespace

bool Variety::contains(const Tuple& t) const { return std::binary_search(tuples.begin(), tuples.end(), t); }

std::size_t tuple_space_size(int order, int n_vars) {
  std::size_t total = 1;
  for (int i = 0; i < n_vars; ++i) {
    if (total > kMaxTuples / static_cast<std::size_t>(order))
      throw VarietyError("tuple space " + std::to_string(order) + "^" + std::to_string(n_vars) +
                         " is too large to enumerate");
    total *= static_cast<std::size_t>(order);
  }
  return total;
}

Tuple tuple_at(std::size_t k, int order, int n_vars) {
  Tuple t(n_vars);
  for (int i = n_vars - 1; i >= 0; --i) {
    t[i] = static_cast<int>(k % static_cast<std::size_t>(order));
    k /= static_cast<std::size_t>(order);
  }
  return t;
}

Variety solution_set(const EquationSystem& s, const FiniteGroup& g, std::span<const int> coefficients) {
  check_coefficients(s, g, coefficients);
  auto eqs = by_length(s);
  auto tuples = enumerate(g, s.n_vars, [&](const Tuple& t) {
    for (const auto* e : eqs)
      if (evaluate(*e, std::span<const int>(t), coefficients, g) != 0) return false;
    return true;
  });
  return {g, s.n_vars, std::move(tuples)};
}

QuasiVariety quasi_solution_set(const EquationSystem& s, const FiniteGroup& g, std::span<const int> target,
                                std::span<const int> coefficients) {
  check_coefficients(s, g, coefficients);
  std::vector<char> in(g.order(), 0);
  for (int a : target) {
    if (a < 0 || a >= g.order()) throw VarietyError("target element " + std::to_string(a) + " out of range");
    in[a] = 1;
  }
  auto eqs = by_length(s);
  auto tuples = enumerate(g, s.n_vars, [&](const Tuple& t) {
    for (const auto* e : eqs)
      if (!in[evaluate(*e, std::span<const int>(t), coefficients, g)]) return false;
    return true;
  });
  QuasiVariety q;
  q.group = g;
  q.n_vars = s.n_vars;
  q.tuples = std::move(tuples);
  for (int a = 0; a < g.order(); ++a)
    if (in[a]) q.target.push_back(a);
  return q;
}

namespace {

// sat[k * m + i] records whether tuple k satisfies equation i.
struct Evaluated {
  std::size_t tuples = 0;
  int n_vars = 0;
  int order = 0;
  std::vector<char> sat;
};

Evaluated evaluate_all(const EquationSystem& s, const FamilyMember& member) {
  check_coefficients(s, member.group, member.coefficients);
  Evaluated ev;
  ev.order = member.group.order();
  ev.n_vars = s.n_vars;
  ev.tuples = tuple_space_size(ev.order, s.n_vars);
  const std::size_t m = s.equations.size();
  ev.sat.assign(ev.tuples * m, 0);
  parallel_chunks(ev.tuples, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k) {
      Tuple t = tuple_at(k, ev.order, ev.n_vars);
      for (std::size_t i = 0; i < m; ++i)
        ev.sat[k * m + i] =
            evaluate(s.equations[i], std::span<const int>(t), std::span<const int>(member.coefficients),
                     member.group) == 0;
    }
  });
  return ev;
}

// First tuple (family order, then row-major) satisfying every equation in
// `kept` but not the whole system.
Separation separate(const std::vector<Evaluated>& evs, std::size_t m, const std::vector<int>& kept) {
  for (std::size_t g = 0; g < evs.size(); ++g) {
    const auto& ev = evs[g];
    for (std::size_t k = 0; k < ev.tuples; ++k) {
      const char* row = &ev.sat[k * m];
      bool ok = std::all_of(kept.begin(), kept.end(), [&](int i) { return row[i]; });
      if (!ok) continue;
      for (std::size_t i = 0; i < m; ++i)
        if (!row[i])
          return {static_cast<int>(g), tuple_at(k, ev.order, ev.n_vars), static_cast<int>(i)};
    }
  }
  return {};
}

}  // namespace

MinimalSubsystem minimal_subsystem(const EquationSystem& s, std::span<const FamilyMember> family, bool shrink) {
  const std::size_t m = s.equations.size();
  std::vector<Evaluated> evs;
  for (const auto& member : family) evs.push_back(evaluate_all(s, member));

  // The prefix of length k works iff no tuple first fails at an index >= k.
  int need = 0;
  for (const auto& ev : evs)
    for (std::size_t k = 0; k < ev.tuples; ++k) {
      const char* row = &ev.sat[k * m];
      for (std::size_t i = 0; i < m; ++i)
        if (!row[i]) {
          need = std::max(need, static_cast<int>(i) + 1);
          break;
        }
    }

  MinimalSubsystem out;
  for (int k = 0; k < need; ++k) {
    std::vector<int> prefix(k);
    std::iota(prefix.begin(), prefix.end(), 0);
    out.rejected_prefixes.push_back(separate(evs, m, prefix));
  }
  out.indices.resize(need);
  std::iota(out.indices.begin(), out.indices.end(), 0);

  if (shrink) {
    for (int i = need - 1; i >= 0; --i) {
      std::vector<int> rest;
      for (int j : out.indices)
        if (j != i) rest.push_back(j);
      if (separate(evs, m, rest).member < 0) out.indices = std::move(rest);
    }
  }
  for (int i : out.indices) {
    std::vector<int> rest;
    for (int j : out.indices)
      if (j != i) rest.push_back(j);
    out.necessity.push_back(separate(evs, m, rest));
  }
  return out;
}

}  // namespace eqnoeth
