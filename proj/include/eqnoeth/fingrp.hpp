#pragma once

// Finite groups given by multiplication tables. Element 0 is always the
// identity. Groups are cheap to copy: the table is shared and immutable.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace eqnoeth {

class GroupError : public std::runtime_error {
 public:
  enum class Kind {
    NotSquare,
    OutOfRange,
    NotLatin,
    NoIdentity,
    NotAssociative,
    NotSubset,
    NotNormal,
    NotHomomorphism,
    NotAutomorphism,
    Mismatch,
  };
  GroupError(Kind kind, const std::string& what, std::vector<int> witness = {})
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}
  Kind kind() const { return kind_; }
  /// Offending elements, e.g. the triple (x, y, z) with (xy)z != x(yz).
  const std::vector<int>& witness() const { return witness_; }

 private:
  Kind kind_;
  std::vector<int> witness_;
};

class FiniteGroup {
 public:
  using Element = int;

  FiniteGroup();  // trivial group

  /// Checks the group axioms and throws GroupError naming the first failure.
  static FiniteGroup validate(const std::vector<std::vector<int>>& table,
                              std::vector<std::string> names = {});
  /// Skips the O(n^3) associativity scan; for tables built from groups that
  /// are already known to be valid.
  static FiniteGroup trusted(std::vector<int> flat_table, int order, std::vector<std::string> names = {});

  int order() const { return data_->order; }
  int identity() const { return 0; }
  int multiply(int x, int y) const { return data_->table[static_cast<std::size_t>(x) * data_->order + y]; }
  int inverse(int x) const { return data_->inverse[x]; }
  int power(int x, long long k) const;
  int conjugate(int x, int g) const { return multiply(inverse(g), multiply(x, g)); }  // x^g
  int commutator(int x, int y) const { return multiply(multiply(inverse(x), inverse(y)), multiply(x, y)); }
  int element_order(int x) const;
  bool is_abelian() const;

  const std::vector<std::string>& names() const { return data_->names; }
  std::string name(int x) const;

  /// Same object (shared table), not isomorphism.
  bool same(const FiniteGroup& other) const { return data_ == other.data_; }
  /// Equal tables.
  bool operator==(const FiniteGroup& other) const;

  std::vector<std::vector<int>> table() const;

 private:
  struct Data {
    int order = 1;
    std::vector<int> table;
    std::vector<int> inverse;
    std::vector<std::string> names;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static std::shared_ptr<const Data> finish(std::vector<int> flat, int order, std::vector<std::string> names);
  std::shared_ptr<const Data> data_;
};

/// Subset of a group's elements that is closed under the group operations.
class Subgroup {
 public:
  Subgroup(FiniteGroup parent, std::vector<int> sorted_elements);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int index() const { return parent_.order() / order(); }
  bool contains(int x) const;
  bool is_trivial() const { return elements_.size() == 1; }
  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }

 private:
  FiniteGroup parent_;
  std::vector<int> elements_;
};

class Homomorphism {
 public:
  /// Validates images[xy] = images[x] images[y].
  Homomorphism(FiniteGroup source, FiniteGroup target, std::vector<int> images);
  static Homomorphism identity(const FiniteGroup& g);
  /// Skips the homomorphism check; for maps that are homomorphisms by
  /// construction.
  static Homomorphism trusted(FiniteGroup source, FiniteGroup target, std::vector<int> images);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  const std::vector<int>& images() const { return images_; }
  int operator()(int x) const { return images_[x]; }
  bool injective() const;
  Subgroup kernel() const;
  Subgroup image() const;
  /// Elements of the source mapping into the given subset of the target.
  std::vector<int> preimage(std::span<const int> target_subset) const;
  bool operator==(const Homomorphism& o) const { return images_ == o.images_; }

 private:
  Homomorphism() = default;
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<int> images_;
};

/// outer after inner.
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const int> gens);
Subgroup normal_closure(const FiniteGroup& g, std::span<const int> gens);
bool is_normal(const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
struct EmbeddedSubgroup {
  FiniteGroup group;       // elements renumbered in the subgroup's sorted order
  Homomorphism inclusion;  // into the parent
};
EmbeddedSubgroup subgroup_as_group(const Subgroup& h);
/// All normal subgroups, ordered by increasing index (ties by element list).
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);

struct QuotientResult {
  FiniteGroup group;
  Homomorphism projection;
  std::vector<int> representatives;  // smallest element of each coset
};
/// G/N on cosets ordered by smallest representative; throws NotNormal with a
/// witness (n, g) such that n^g is outside N.
QuotientResult quotient(const FiniteGroup& g, const Subgroup& n);

struct CentralSeries {
  std::vector<Subgroup> terms;  // gamma_1 = G, gamma_2, ... up to stabilization
  bool nilpotent = false;
  int nilpotency_class = -1;  // number of nontrivial terms when nilpotent
};
CentralSeries lower_central_series(const FiniteGroup& g);

struct DirectProduct {
  FiniteGroup group;  // element (g, h) has index g * |H| + h
  FiniteGroup left, right;
  int pair(int g, int h) const { return g * right.order() + h; }
  int first(int x) const { return x / right.order(); }
  int second(int x) const { return x % right.order(); }
};
DirectProduct direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// A ⋊ P for the right action a -> a^p given by action[p] (a permutation of
/// A's indices). Element (a, p) stands for the product a·p and has index
/// a * |P| + p, so (a, p)(a', p') = (a + a'^{p^{-1}}, pp').
struct SemidirectProduct {
  FiniteGroup group;
  FiniteGroup base;    // A, normal
  FiniteGroup acting;  // P, complement
  std::vector<std::vector<int>> action;

  int pair(int a, int p) const { return a * acting.order() + p; }
  int base_part(int x) const { return x / acting.order(); }
  int acting_part(int x) const { return x % acting.order(); }
  int act(int a, int p) const { return action[p][a]; }  // a^p
  Homomorphism projection() const;     // G -> P
  Homomorphism base_embedding() const; // A -> G
  Homomorphism complement_embedding() const; // P -> G
};
SemidirectProduct semidirect_product(const FiniteGroup& a, const FiniteGroup& p,
                                     const std::vector<std::vector<int>>& action);

// Standard groups.
FiniteGroup cyclic_group(int n);
/// Closure of permutation generators on {0..degree-1}; the identity
/// permutation is element 0, the rest sorted lexicographically.
FiniteGroup permutation_group(const std::vector<std::vector<int>>& generators, int degree);
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group(int n);
/// Dihedral group of order 2n.
FiniteGroup dihedral_group(int n);
FiniteGroup klein_four_group();
/// Parses names like "C4", "S3", "A4", "Dih4" (order 8), "V4", "1".
FiniteGroup named_group(const std::string& name);

// JSON: {"order": n, "table": [[...]], "names": [...]?}
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);
/// Semidirect input: {"A": group, "P": group, "action": [[...]]}
SemidirectProduct semidirect_from_json(const nlohmann::json& j);

}  // namespace eqnoeth
