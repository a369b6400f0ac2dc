#include "eqnoeth/fingrp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace eqnoeth {

using Kind = GroupError::Kind;

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup() : data_(finish({0}, 1, {})) {}

std::shared_ptr<const FiniteGroup::Data> FiniteGroup::finish(std::vector<int> flat, int order,
                                                             std::vector<std::string> names) {
  auto d = std::make_shared<Data>();
  d->order = order;
  d->table = std::move(flat);
  d->inverse.assign(order, -1);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      if (d->table[static_cast<std::size_t>(x) * order + y] == 0) {
        d->inverse[x] = y;
        break;
      }
  d->names = std::move(names);
  return d;
}

FiniteGroup FiniteGroup::trusted(std::vector<int> flat_table, int order, std::vector<std::string> names) {
  return FiniteGroup(finish(std::move(flat_table), order, std::move(names)));
}

FiniteGroup FiniteGroup::validate(const std::vector<std::vector<int>>& table, std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw GroupError(Kind::NotSquare, "empty table");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(table[i].size()) != n)
      throw GroupError(Kind::NotSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(table[i].size()) + " entries, expected " +
                                            std::to_string(n), {i});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table[i][j] < 0 || table[i][j] >= n)
        throw GroupError(Kind::OutOfRange, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") = " + std::to_string(table[i][j]) + " out of range",
                         {i, j});
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw GroupError(Kind::Mismatch, "names list length differs from the order");

  // Axioms in textbook order: associativity, identity, inverses.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xy = table[x][y];
      for (int z = 0; z < n; ++z)
        if (table[xy][z] != table[x][table[y][z]])
          throw GroupError(Kind::NotAssociative,
                           "(xy)z != x(yz) for x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                               ", z=" + std::to_string(z),
                           {x, y, z});
    }
  for (int x = 0; x < n; ++x)
    if (table[0][x] != x || table[x][0] != x)
      throw GroupError(Kind::NoIdentity, "element 0 is not a two-sided identity (fails at " +
                                             std::to_string(x) + ")",
                       {x});
  for (int i = 0; i < n; ++i) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (row[table[i][j]]++)
        throw GroupError(Kind::NotLatin, "row " + std::to_string(i) + " repeats " +
                                             std::to_string(table[i][j]), {i});
      if (col[table[j][i]]++)
        throw GroupError(Kind::NotLatin, "column " + std::to_string(i) + " repeats " +
                                             std::to_string(table[j][i]), {i});
    }
  }

  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : table) flat.insert(flat.end(), row.begin(), row.end());
  return FiniteGroup(finish(std::move(flat), n, std::move(names)));
}

int FiniteGroup::power(int x, long long k) const {
  long long ord = element_order(x);
  k %= ord;
  if (k < 0) k += ord;
  int acc = 0;
  for (long long i = 0; i < k; ++i) acc = multiply(acc, x);
  return acc;
}

int FiniteGroup::element_order(int x) const {
  int k = 1;
  for (int y = x; y != 0; y = multiply(y, x)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order(); ++x)
    for (int y = x + 1; y < order(); ++y)
      if (multiply(x, y) != multiply(y, x)) return false;
  return true;
}

std::string FiniteGroup::name(int x) const {
  if (!data_->names.empty()) return data_->names[x];
  return std::to_string(x);
}

bool FiniteGroup::operator==(const FiniteGroup& other) const {
  return data_ == other.data_ || (order() == other.order() && data_->table == other.data_->table);
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
  for (int x = 0; x < order(); ++x)
    for (int y = 0; y < order(); ++y) t[x][y] = multiply(x, y);
  return t;
}

// ---------------------------------------------------------------------------
// Subgroup, Homomorphism

Subgroup::Subgroup(FiniteGroup parent, std::vector<int> sorted_elements)
    : parent_(std::move(parent)), elements_(std::move(sorted_elements)) {
  if (!std::is_sorted(elements_.begin(), elements_.end()))
    std::sort(elements_.begin(), elements_.end());
  if (elements_.empty() || elements_.front() != 0)
    throw GroupError(Kind::NotSubset, "subgroup must contain the identity");
  for (int x : elements_) {
    if (x < 0 || x >= parent_.order()) throw GroupError(Kind::OutOfRange, "subgroup element out of range", {x});
    if (!contains(parent_.inverse(x))) throw GroupError(Kind::NotSubset, "not closed under inverses", {x});
    for (int y : elements_)
      if (!contains(parent_.multiply(x, y)))
        throw GroupError(Kind::NotSubset, "not closed under multiplication", {x, y});
  }
}

bool Subgroup::contains(int x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

Homomorphism::Homomorphism(FiniteGroup source, FiniteGroup target, std::vector<int> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.order())
    throw GroupError(Kind::Mismatch, "image list length differs from the source order");
  for (int x = 0; x < source_.order(); ++x)
    if (images_[x] < 0 || images_[x] >= target_.order())
      throw GroupError(Kind::OutOfRange, "image out of range", {x});
  for (int x = 0; x < source_.order(); ++x)
    for (int y = 0; y < source_.order(); ++y)
      if (images_[source_.multiply(x, y)] != target_.multiply(images_[x], images_[y]))
        throw GroupError(Kind::NotHomomorphism,
                         "f(xy) != f(x)f(y) for x=" + std::to_string(x) + ", y=" + std::to_string(y), {x, y});
}

Homomorphism Homomorphism::trusted(FiniteGroup source, FiniteGroup target, std::vector<int> images) {
  Homomorphism h;
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.images_ = std::move(images);
  return h;
}

Homomorphism Homomorphism::identity(const FiniteGroup& g) {
  std::vector<int> id(g.order());
  std::iota(id.begin(), id.end(), 0);
  return trusted(g, g, std::move(id));
}

bool Homomorphism::injective() const { return kernel().is_trivial(); }

Subgroup Homomorphism::kernel() const {
  std::vector<int> k;
  for (int x = 0; x < source_.order(); ++x)
    if (images_[x] == 0) k.push_back(x);
  return Subgroup(source_, std::move(k));
}

Subgroup Homomorphism::image() const {
  std::set<int> s(images_.begin(), images_.end());
  return Subgroup(target_, std::vector<int>(s.begin(), s.end()));
}

std::vector<int> Homomorphism::preimage(std::span<const int> target_subset) const {
  std::vector<char> in(target_.order(), 0);
  for (int y : target_subset) in[y] = 1;
  std::vector<int> out;
  for (int x = 0; x < source_.order(); ++x)
    if (in[images_[x]]) out.push_back(x);
  return out;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  if (!(inner.target() == outer.source()))
    throw GroupError(Kind::Mismatch, "composition of non-matching homomorphisms");
  std::vector<int> img(inner.source().order());
  for (int x = 0; x < inner.source().order(); ++x) img[x] = outer(inner(x));
  return Homomorphism::trusted(inner.source(), outer.target(), std::move(img));
}

// ---------------------------------------------------------------------------
// Subgroup machinery

namespace {

std::vector<int> closure(const FiniteGroup& g, std::span<const int> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int s : gens) {
      int y = g.multiply(queue[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

}  // namespace

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const int> gens) {
  for (int x : gens)
    if (x < 0 || x >= g.order()) throw GroupError(Kind::OutOfRange, "generator out of range", {x});
  return Subgroup(g, closure(g, gens));
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const int> gens) {
  std::set<int> conj;
  for (int x : gens) {
    if (x < 0 || x >= g.order()) throw GroupError(Kind::OutOfRange, "generator out of range", {x});
    for (int y = 0; y < g.order(); ++y) conj.insert(g.conjugate(x, y));
  }
  std::vector<int> c(conj.begin(), conj.end());
  return Subgroup(g, closure(g, c));
}

bool is_normal(const Subgroup& h) {
  const auto& g = h.parent();
  for (int x : h.elements())
    for (int y = 0; y < g.order(); ++y)
      if (!h.contains(g.conjugate(x, y))) return false;
  return true;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup(a.parent(), std::move(out));
}

EmbeddedSubgroup subgroup_as_group(const Subgroup& h) {
  const auto& el = h.elements();
  const auto& g = h.parent();
  const int n = h.order();
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < n; ++i) pos[el[i]] = i;
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = pos[g.multiply(el[i], el[j])];
    if (!g.names().empty()) names.push_back(g.name(el[i]));
  }
  FiniteGroup sub = FiniteGroup::trusted(std::move(flat), n, std::move(names));
  return {sub, Homomorphism::trusted(sub, g, el)};
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> list;
  auto add = [&](std::vector<int> s) {
    if (found.insert(s).second) list.push_back(std::move(s));
  };
  add({0});
  for (int x = 1; x < g.order(); ++x) {
    int gen[1] = {x};
    add(normal_closure(g, gen).elements());
  }
  // Joins of normal subgroups are normal; close the lattice under joins.
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<int> gens = list[i];
      gens.insert(gens.end(), list[j].begin(), list[j].end());
      add(closure(g, gens));
    }
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  std::vector<Subgroup> out;
  for (auto& s : list) out.emplace_back(g, std::move(s));
  return out;
}

QuotientResult quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!n.parent().same(g) && !(n.parent() == g))
    throw GroupError(Kind::Mismatch, "subgroup of a different group");
  for (int x : n.elements())
    for (int y = 0; y < g.order(); ++y)
      if (!n.contains(g.conjugate(x, y)))
        throw GroupError(Kind::NotNormal,
                         "subgroup not normal: " + std::to_string(x) + "^" + std::to_string(y) + " escapes",
                         {x, y});
  std::vector<int> coset(g.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (coset[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int m : n.elements()) coset[g.multiply(x, m)] = id;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> flat(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) flat[static_cast<std::size_t>(i) * q + j] = coset[g.multiply(reps[i], reps[j])];
  FiniteGroup qg = FiniteGroup::trusted(std::move(flat), q);
  return {qg, Homomorphism::trusted(g, qg, coset), reps};
}

CentralSeries lower_central_series(const FiniteGroup& g) {
  CentralSeries cs;
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  cs.terms.emplace_back(g, all);
  for (;;) {
    const Subgroup& cur = cs.terms.back();
    std::set<int> comms;
    for (int x : cur.elements())
      for (int y = 0; y < g.order(); ++y) comms.insert(g.commutator(x, y));
    std::vector<int> gens(comms.begin(), comms.end());
    Subgroup next(g, closure(g, gens));
    if (next == cur) break;
    cs.terms.push_back(std::move(next));
  }
  cs.nilpotent = cs.terms.back().is_trivial();
  if (cs.nilpotent) cs.nilpotency_class = static_cast<int>(cs.terms.size()) - 1;
  return cs;
}

// ---------------------------------------------------------------------------
// Products

DirectProduct direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int n = g.order() * h.order();
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a = g.multiply(x / h.order(), y / h.order());
      int b = h.multiply(x % h.order(), y % h.order());
      flat[static_cast<std::size_t>(x) * n + y] = a * h.order() + b;
    }
  return {FiniteGroup::trusted(std::move(flat), n), g, h};
}

SemidirectProduct semidirect_product(const FiniteGroup& a, const FiniteGroup& p,
                                     const std::vector<std::vector<int>>& action) {
  if (!a.is_abelian()) throw GroupError(Kind::Mismatch, "semidirect product base must be abelian");
  if (static_cast<int>(action.size()) != p.order())
    throw GroupError(Kind::Mismatch, "action needs one automorphism per element of P");
  for (int q = 0; q < p.order(); ++q) {
    const auto& f = action[q];
    if (static_cast<int>(f.size()) != a.order())
      throw GroupError(Kind::NotAutomorphism, "action[" + std::to_string(q) + "] has wrong length", {q});
    std::vector<char> seen(a.order(), 0);
    for (int x : f) {
      if (x < 0 || x >= a.order() || seen[x]++)
        throw GroupError(Kind::NotAutomorphism, "action[" + std::to_string(q) + "] is not a permutation", {q});
    }
    for (int x = 0; x < a.order(); ++x)
      for (int y = 0; y < a.order(); ++y)
        if (f[a.multiply(x, y)] != a.multiply(f[x], f[y]))
          throw GroupError(Kind::NotAutomorphism, "action[" + std::to_string(q) + "] is not an automorphism",
                           {q, x, y});
  }
  for (int x = 0; x < a.order(); ++x)
    if (action[0][x] != x) throw GroupError(Kind::NotHomomorphism, "identity of P acts nontrivially", {0, x});
  // Right action: a^{qr} = (a^q)^r.
  for (int q = 0; q < p.order(); ++q)
    for (int r = 0; r < p.order(); ++r)
      for (int x = 0; x < a.order(); ++x)
        if (action[p.multiply(q, r)][x] != action[r][action[q][x]])
          throw GroupError(Kind::NotHomomorphism,
                           "action is not a right action at p=" + std::to_string(q) + ", q=" + std::to_string(r),
                           {q, r, x});

  const int np = p.order();
  const int n = a.order() * np;
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      int a1 = u / np, p1 = u % np, a2 = v / np, p2 = v % np;
      int a3 = a.multiply(a1, action[p.inverse(p1)][a2]);
      flat[static_cast<std::size_t>(u) * n + v] = a3 * np + p.multiply(p1, p2);
    }
  return {FiniteGroup::trusted(std::move(flat), n), a, p, action};
}

Homomorphism SemidirectProduct::projection() const {
  std::vector<int> img(group.order());
  for (int x = 0; x < group.order(); ++x) img[x] = acting_part(x);
  return Homomorphism::trusted(group, acting, std::move(img));
}

Homomorphism SemidirectProduct::base_embedding() const {
  std::vector<int> img(base.order());
  for (int x = 0; x < base.order(); ++x) img[x] = pair(x, 0);
  return Homomorphism::trusted(base, group, std::move(img));
}

Homomorphism SemidirectProduct::complement_embedding() const {
  std::vector<int> img(acting.order());
  for (int q = 0; q < acting.order(); ++q) img[q] = pair(0, q);
  return Homomorphism::trusted(acting, group, std::move(img));
}

// ---------------------------------------------------------------------------
// Standard groups

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw GroupError(Kind::Mismatch, "cyclic group order must be positive");
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) flat[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  return FiniteGroup::trusted(std::move(flat), n);
}

FiniteGroup permutation_group(const std::vector<std::vector<int>>& generators, int degree) {
  using Perm = std::vector<int>;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) throw GroupError(Kind::Mismatch, "generator degree mismatch");
    Perm sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != id) throw GroupError(Kind::Mismatch, "generator is not a permutation");
  }
  // x*y applies x first, then y.
  auto mul = [degree](const Perm& x, const Perm& y) {
    Perm z(degree);
    for (int i = 0; i < degree; ++i) z[i] = y[x[i]];
    return z;
  };
  std::set<Perm> seen{id};
  std::vector<Perm> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : generators) {
      Perm y = mul(queue[i], g);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  std::vector<Perm> elems(seen.begin(), seen.end());  // lexicographic; identity first
  std::map<Perm, int> index;
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) index[elems[i]] = i;
  const int n = static_cast<int>(elems.size());
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) flat[static_cast<std::size_t>(x) * n + y] = index.at(mul(elems[x], elems[y]));
    std::string nm = "[";
    for (int i = 0; i < degree; ++i) nm += (i ? "," : "") + std::to_string(elems[x][i]);
    names.push_back(nm + "]");
  }
  return FiniteGroup::trusted(std::move(flat), n, std::move(names));
}

FiniteGroup symmetric_group(int n) {
  if (n <= 1) return FiniteGroup();
  std::vector<int> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return permutation_group({swap, cycle}, n);
}

FiniteGroup alternating_group(int n) {
  if (n <= 2) return FiniteGroup();
  std::vector<std::vector<int>> gens;
  for (int k = 2; k < n; ++k) {
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 0);
    c[0] = 1;
    c[1] = k;
    c[k] = 0;
    gens.push_back(c);
  }
  return permutation_group(gens, n);
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw GroupError(Kind::Mismatch, "dihedral parameter must be positive");
  // r^k s^f has index f*n + k; r^a s^f r^b s^g = r^{a + (-1)^f b} s^{f+g}.
  const int m = 2 * n;
  std::vector<int> flat(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int a = x % n, f = x / n, b = y % n, g = y / n;
      int k = ((f ? a - b : a + b) % n + n) % n;
      flat[static_cast<std::size_t>(x) * m + y] = ((f + g) % 2) * n + k;
    }
  return FiniteGroup::trusted(std::move(flat), m);
}

FiniteGroup klein_four_group() { return direct_product(cyclic_group(2), cyclic_group(2)).group; }

FiniteGroup named_group(const std::string& name) {
  auto number = [&](std::size_t prefix) {
    std::string digits = name.substr(prefix);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw GroupError(Kind::Mismatch, "unknown group name '" + name + "'");
    return std::stoi(digits);
  };
  if (name == "1") return FiniteGroup();
  if (name == "V4") return klein_four_group();
  if (name.rfind("Dih", 0) == 0) return dihedral_group(number(3));
  if (name.rfind("C", 0) == 0) return cyclic_group(number(1));
  if (name.rfind("S", 0) == 0) return symmetric_group(number(1));
  if (name.rfind("A", 0) == 0) return alternating_group(number(1));
  throw GroupError(Kind::Mismatch, "unknown group name '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (j.is_string()) return named_group(j.get<std::string>());
  if (!j.is_object() || !j.contains("table"))
    throw GroupError(Kind::Mismatch, "group must be a name or an object with a \"table\"");
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
    throw GroupError(Kind::Mismatch, "\"order\" disagrees with the table size");
  return FiniteGroup::validate(table, std::move(names));
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  nlohmann::json j;
  j["order"] = g.order();
  j["table"] = g.table();
  if (!g.names().empty()) j["names"] = g.names();
  return j;
}

SemidirectProduct semidirect_from_json(const nlohmann::json& j) {
  return semidirect_product(group_from_json(j.at("A")), group_from_json(j.at("P")),
                            j.at("action").get<std::vector<std::vector<int>>>());
}

}  // namespace eqnoeth
