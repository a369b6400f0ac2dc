#pragma once

// Solution sets of equation systems over finite groups, by exhaustive
// enumeration of G^n in row-major order (first coordinate most significant).

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqnoeth/fingrp.hpp"
#include "eqnoeth/words.hpp"

namespace eqnoeth {

class VarietyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Tuple = std::vector<int>;

struct Variety {
  FiniteGroup group;
  int n_vars = 0;
  std::vector<Tuple> tuples;  // sorted, row-major order

  bool contains(const Tuple& t) const;
  std::size_t size() const { return tuples.size(); }
};

struct QuasiVariety : Variety {
  std::vector<int> target;  // sorted subset A of the group
};

/// Tuple number k of G^n in row-major order.
Tuple tuple_at(std::size_t k, int order, int n_vars);
/// |G|^n, throwing VarietyError if the space is too large to enumerate.
std::size_t tuple_space_size(int order, int n_vars);

/// V_G(S). coefficients[t] is the group element named by token g<t>.
Variety solution_set(const EquationSystem& s, const FiniteGroup& g, std::span<const int> coefficients = {});

/// V_{G,A}(S): tuples on which every equation lands in A.
QuasiVariety quasi_solution_set(const EquationSystem& s, const FiniteGroup& g, std::span<const int> target,
                                std::span<const int> coefficients = {});

struct FamilyMember {
  std::string name;
  FiniteGroup group;
  std::vector<int> coefficients;
};

/// A tuple of group `member` that satisfies the kept equations but not the
/// whole system; `equation` is the first equation of the system it violates.
struct Separation {
  int member = -1;
  Tuple tuple;
  int equation = -1;
};

struct MinimalSubsystem {
  std::vector<int> indices;  // S_0, increasing
  /// rejected_prefixes[k] separates the prefix of length k from the system.
  std::vector<Separation> rejected_prefixes;
  /// necessity[i] separates S_0 minus indices[i] from the system.
  std::vector<Separation> necessity;
};

/// Smallest prefix S_0 of s with V_G(S_0) = V_G(s) for every member of the
/// family. With shrink = true the prefix is then thinned greedily (dropping
/// from the back) to an irredundant subset.
MinimalSubsystem minimal_subsystem(const EquationSystem& s, std::span<const FamilyMember> family,
                                   bool shrink = false);

}  // namespace eqnoeth
