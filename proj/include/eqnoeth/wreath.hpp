#pragma once

// Restricted regular wreath products G ≀ H. An element (f, a) is a finitely
// supported function f: H -> G (stored as a map without identity values)
// together with a point a of H. With f_a(x) = f(x a^{-1}):
//
//   (f, a)(g, b) = (f_b g, ab),    (f, a)^{-1} = ((f_{a^{-1}})^{-1}, a^{-1}).
//
// Carriers are small structs exposing identity/multiply/inverse/format; a
// WreathProduct is itself a carrier, so products nest.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqnoeth/fingrp.hpp"
#include "eqnoeth/words.hpp"

namespace eqnoeth {

class WreathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integers under addition.
struct IntegerLine {
  using Element = long long;
  Element identity() const { return 0; }
  Element multiply(Element a, Element b) const { return a + b; }
  Element inverse(Element a) const { return -a; }
  std::string format(Element a) const { return std::to_string(a); }
};

struct FiniteCarrier {
  using Element = int;
  FiniteGroup group;
  Element identity() const { return 0; }
  Element multiply(Element a, Element b) const { return group.multiply(a, b); }
  Element inverse(Element a) const { return group.inverse(a); }
  long long element_order(Element a) const { return group.element_order(a); }
  std::string format(Element a) const { return group.name(a); }
};

template <class G, class H>
class WreathProduct {
 public:
  using TopElement = typename G::Element;
  using PointElement = typename H::Element;
  using Function = std::map<PointElement, TopElement>;

  struct Element {
    Function support;
    PointElement point{};
    auto operator<=>(const Element&) const = default;
    bool operator==(const Element&) const = default;
  };

  WreathProduct(G top, H base) : top_(std::move(top)), base_(std::move(base)) {}

  const G& top() const { return top_; }
  const H& base() const { return base_; }

  /// Builds an element, dropping identity values from the support.
  Element make(Function f, PointElement point) const {
    std::erase_if(f, [&](const auto& kv) { return kv.second == top_.identity(); });
    return Element{std::move(f), std::move(point)};
  }
  Element identity() const { return Element{{}, base_.identity()}; }
  /// g placed at the identity of H, i.e. G as a subgroup of G ≀ H.
  Element top_element(const TopElement& g) const { return make({{base_.identity(), g}}, base_.identity()); }
  /// (1, h), i.e. H as a subgroup of G ≀ H.
  Element base_element(const PointElement& h) const { return Element{{}, h}; }

  /// f_a: x -> f(x a^{-1}).
  Function shift(const Function& f, const PointElement& a) const {
    Function out;
    for (const auto& [x, v] : f) out.emplace(base_.multiply(x, a), v);
    return out;
  }

  Element multiply(const Element& x, const Element& y) const {
    Function f = shift(x.support, y.point);
    for (const auto& [k, v] : y.support) {
      auto it = f.find(k);
      if (it == f.end()) {
        f.emplace(k, v);
      } else {
        it->second = top_.multiply(it->second, v);
        if (it->second == top_.identity()) f.erase(it);
      }
    }
    return Element{std::move(f), base_.multiply(x.point, y.point)};
  }

  Element inverse(const Element& x) const {
    const PointElement ai = base_.inverse(x.point);
    Function f;
    for (const auto& [k, v] : shift(x.support, ai)) f.emplace(k, top_.inverse(v));
    return Element{std::move(f), ai};
  }

  std::string format(const Element& x) const {
    std::string s = "({";
    bool first = true;
    for (const auto& [k, v] : x.support) {
      s += (first ? "" : ", ") + base_.format(k) + ": " + top_.format(v);
      first = false;
    }
    return s + "}, " + base_.format(x.point) + ")";
  }

 private:
  G top_;
  H base_;
};

using LampWreath = WreathProduct<FiniteCarrier, IntegerLine>;   // G ≀ Z
using FiniteWreath = WreathProduct<FiniteCarrier, FiniteCarrier>;
using NestedWreath = WreathProduct<FiniteCarrier, LampWreath>;  // G ≀ (G' ≀ Z)

LampWreath lamp_wreath(const FiniteGroup& top);
NestedWreath nested_wreath(const FiniteGroup& outer_top, const FiniteGroup& inner_top);

template <class W>
typename W::Element wreath_commutator(const W& w, const typename W::Element& x, const typename W::Element& y) {
  return w.multiply(w.multiply(w.inverse(x), w.inverse(y)), w.multiply(x, y));
}

/// (f, a)^n by repeated squaring.
template <class W>
typename W::Element wreath_power(const W& w, const typename W::Element& x, long long n) {
  return group_power(w, x, n);
}

/// (f, a)^n = (f + f_a + ... + f_{a^{n-1}}, a^n) for n > 0 and
/// (-(f_{a^{-1}} + ... + f_{a^n}), a^n) for n < 0; G must be abelian.
template <class G, class H>
typename WreathProduct<G, H>::Element abelian_power(const WreathProduct<G, H>& w,
                                                    const typename WreathProduct<G, H>::Element& x, long long n) {
  const auto& top = w.top();
  const auto& base = w.base();
  typename WreathProduct<G, H>::Function sum;
  auto accumulate = [&](const auto& f, bool negate) {
    for (const auto& [k, v] : f) {
      auto val = negate ? top.inverse(v) : v;
      auto it = sum.find(k);
      if (it == sum.end())
        sum.emplace(k, val);
      else
        it->second = top.multiply(it->second, val);
    }
  };
  auto shift_by = base.identity();
  if (n > 0) {
    for (long long i = 0; i < n; ++i) {
      accumulate(w.shift(x.support, shift_by), false);
      shift_by = base.multiply(shift_by, x.point);
    }
  } else if (n < 0) {
    const auto ai = base.inverse(x.point);
    shift_by = ai;
    for (long long i = 0; i < -n; ++i) {
      accumulate(w.shift(x.support, shift_by), true);
      shift_by = base.multiply(shift_by, ai);
    }
  }
  auto point = base.identity();
  const auto step = n >= 0 ? x.point : base.inverse(x.point);
  for (long long i = 0; i < (n >= 0 ? n : -n); ++i) point = base.multiply(point, step);
  return w.make(std::move(sum), point);
}

/// g^{(A)} = product over a in A of a^{-1} g a: support A with constant
/// value g, point the identity.
template <class W, class Range>
typename W::Element spread(const W& w, const typename W::TopElement& g, const Range& points) {
  typename W::Function f;
  for (const auto& a : points) f[a] = g;
  return w.make(std::move(f), w.base().identity());
}

// ---------------------------------------------------------------------------
// The chain of spread elements in C_2 ≀ (C_2 ≀ Z).

/// Elements (f, 0) of G ≀ Z with supp(f) in [-n, n], i.e. the window
/// subgroup K_n = ⊕_{|j| <= n} G; enumerated in a fixed order.
std::vector<LampWreath::Element> window_subgroup(const LampWreath& w, int n);
/// h_n = δ_{n+1} at the top generator, which lies in K_{n+1} \ K_n.
LampWreath::Element window_edge(const LampWreath& w, int n, int g = 1);

struct SpreadWitness {
  int n = 0;
  NestedWreath::Element witness;        // g^{(K_n)}
  std::size_t subgroup_order = 0;       // |K_n|
  bool commutes_with_prior = false;     // [witness, h_i] = 1 for i < n
  bool commutes_with_subgroup = false;  // [witness, k] = 1 for all k in K_n
  int first_failure = -1;               // least i with [witness, h_i] != 1, or -1
};

/// Witnesses g^{(K_n)} for n = 0..N inside C_2 ≀ (C_2 ≀ Z); `g` is the
/// outer top element (0 gives the identity, which commutes with everything).
std::vector<SpreadWitness> non_noetherian_witnesses(int N, int g = 1);

// ---------------------------------------------------------------------------
// Cyclic membership.

struct Membership {
  enum class Status { Member, NonMember, Exhausted };
  Status status = Status::Exhausted;
  long long exponent = 0;  // valid for Member
  bool complete = false;   // NonMember is a proof, not a bounded search
  long long searched = 0;  // powers compared
};

/// Decides whether y is a power of x. H = Z pins the exponent by the point
/// when x.point != 0; otherwise the (finite) order of x is used. The bound
/// only matters when neither applies.
Membership cyclic_membership(const LampWreath& w, const LampWreath::Element& x, const LampWreath::Element& y,
                             long long bound);
Membership cyclic_membership(const FiniteWreath& w, const FiniteWreath::Element& x,
                             const FiniteWreath::Element& y, long long bound);

// ---------------------------------------------------------------------------
// Separability certificates.

struct SeparabilityLimits {
  long long max_n = 64;  // largest modulus N tried when H = Z
  long long membership_bound = 4096;
};

struct SeparabilityCertificate {
  enum class Status { Certified, IsPower, Exhausted };
  Status status = Status::Exhausted;
  long long power = 0;             // IsPower: y = x^power
  std::vector<int> B;              // normal subgroup of G
  long long modulus = 0;           // H = Z: the quotient is Z/modulus
  std::vector<int> N;              // H finite: normal subgroup of H
  int top_quotient_order = 0;      // |G/B|
  int base_quotient_order = 0;     // |H/N|
  long long image_order = 0;       // order of the image of x
  long long recipe_modulus = 0;    // H = Z: modulus the constructive argument guarantees
  long long candidates = 0;        // (N, B) pairs examined
};

/// Searches quotients (G/B) ≀ (H/N) in which the image of y is outside the
/// cyclic subgroup generated by the image of x. N increases first, then B
/// by increasing index; for nontrivial H/N only abelian G/B are used, since
/// only then does the quotient map exist.
SeparabilityCertificate separability_certificate(const LampWreath& w, const LampWreath::Element& x,
                                                 const LampWreath::Element& y, const SeparabilityLimits& limits);
SeparabilityCertificate separability_certificate(const FiniteWreath& w, const FiniteWreath::Element& x,
                                                 const FiniteWreath::Element& y, const SeparabilityLimits& limits);

/// Rechecks a Certified result from scratch on dense arrays: projects x and
/// y, lists every power of the image of x and confirms y's image is absent.
bool verify_certificate(const LampWreath& w, const LampWreath::Element& x, const LampWreath::Element& y,
                        const SeparabilityCertificate& c);
bool verify_certificate(const FiniteWreath& w, const FiniteWreath::Element& x, const FiniteWreath::Element& y,
                        const SeparabilityCertificate& c);

/// For abelian G and H = Z: a modulus at which the constructive argument
/// (injectivity of Z -> Z/N on the relevant supports) succeeds with B = 1.
long long recipe_modulus(const LampWreath& w, const LampWreath::Element& x, const LampWreath::Element& y);

// ---------------------------------------------------------------------------
// Finite wreath products as tables.

struct FiniteWreathTable {
  FiniteGroup group;
  FiniteWreath wreath;
  int encode(const FiniteWreath::Element& e) const;
  FiniteWreath::Element decode(int index) const;
};
/// G ≀ H as a FiniteGroup; element (f, a) is encoded as a + |H| * sum_x
/// f(x) |G|^x, so the identity is 0.
FiniteWreathTable finite_wreath_table(const FiniteGroup& g, const FiniteGroup& h);

// ---------------------------------------------------------------------------
// JSON: {"support": {"x": "g", ...}, "point": "a"}, with x and a integers
// (H = Z) or element indices (H finite) and g an element index of G.

LampWreath::Element lamp_element_from_json(const LampWreath& w, const nlohmann::json& j);
FiniteWreath::Element finite_wreath_element_from_json(const FiniteWreath& w, const nlohmann::json& j);
nlohmann::json lamp_element_to_json(const LampWreath::Element& e);
nlohmann::json finite_wreath_element_to_json(const FiniteWreath::Element& e);

}  // namespace eqnoeth
