#pragma once

// Integral group rings ZP of finite groups, the right ZP-module structure on
// the abelian normal subgroup of a split extension A ⋊ P, and the
// decomposition of an equation over A ⋊ P into a condition on P plus a
// linear condition on A.

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "eqnoeth/fingrp.hpp"
#include "eqnoeth/words.hpp"

namespace eqnoeth {

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroupRingElement {
 public:
  explicit GroupRingElement(FiniteGroup p) : group_(std::move(p)) {}
  /// coefficient * basis element x.
  static GroupRingElement basis(const FiniteGroup& p, int x, long long coefficient = 1);

  const FiniteGroup& group() const { return group_; }
  const std::map<int, long long>& coefficients() const { return c_; }
  long long coefficient(int x) const;
  bool is_zero() const { return c_.empty(); }

  void add(int x, long long k);
  bool operator==(const GroupRingElement& o) const { return c_ == o.c_; }

 private:
  FiniteGroup group_;
  std::map<int, long long> c_;
};

GroupRingElement ring_add(const GroupRingElement& u, const GroupRingElement& v);
GroupRingElement ring_scale(const GroupRingElement& u, long long k);
GroupRingElement ring_multiply(const GroupRingElement& u, const GroupRingElement& v);

/// For a positive word Y_1...Y_k, entry j-1 is the sum of the suffix products
/// p_i ... p_k over the positions i with Y_i = X_j.
std::vector<GroupRingElement> s_j_coefficients(const Word& s, const FiniteGroup& p, std::span<const int> p_tuple);

/// a · u = sum over x of u_x a^x, computed in A via the declared right action.
int module_act(const SemidirectProduct& g, int a, const GroupRingElement& u);

struct SplitCheck {
  bool direct = false;      // s((a_1,p_1), ..., (a_n,p_n)) = 1 in A ⋊ P
  bool decomposed = false;  // s(p) = 1 and sum_j a_j · s_j(p) = 0
  bool agree() const { return direct == decomposed; }
};

/// tuple[j] is the element (a_j, p_j) given by its index in g.group.
SplitCheck split_solution_check(const Word& s, const SemidirectProduct& g, std::span<const int> tuple);

struct SplitSweep {
  std::size_t tuples = 0;
  std::size_t solutions = 0;
  std::size_t disagreements = 0;
  std::optional<std::vector<int>> first_disagreement;  // row-major first
};

/// Runs split_solution_check on every tuple of (A ⋊ P)^n.
SplitSweep split_sweep(const Word& s, const SemidirectProduct& g);

}  // namespace eqnoeth
