#pragma once

// Exact matrices over commutative rings: integer unitriangular matrices,
// polynomial matrices from word maps, the cyclic rings Z[X]/(X^{2^d} - 1),
// and 2x2 rational matrices for the Baumslag-Solitar table.

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqnoeth/words.hpp"

namespace eqnoeth {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense square matrix over a commutative ring T. The ring's zero and one
/// are carried explicitly so that T need not be default-constructible into
/// a meaningful zero (cyclic ring elements know their depth).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int r, const T& zero) : r_(r), a_(static_cast<std::size_t>(r) * r, zero) {}

  static Matrix identity(int r, const T& zero, const T& one) {
    Matrix m(r, zero);
    for (int i = 0; i < r; ++i) m(i, i) = one;
    return m;
  }

  int size() const { return r_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * r_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * r_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_) throw MatrixError("matrix size mismatch");
    Matrix z = x;
    for (int i = 0; i < x.r_; ++i)
      for (int j = 0; j < x.r_; ++j) {
        T acc = x(i, 0) * y(0, j);
        for (int k = 1; k < x.r_; ++k) acc = acc + x(i, k) * y(k, j);
        z(i, j) = acc;
      }
    return z;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_) throw MatrixError("matrix size mismatch");
    Matrix z = x;
    for (std::size_t k = 0; k < z.a_.size(); ++k) z.a_[k] = x.a_[k] + y.a_[k];
    return z;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_) throw MatrixError("matrix size mismatch");
    Matrix z = x;
    for (std::size_t k = 0; k < z.a_.size(); ++k) z.a_[k] = x.a_[k] - y.a_[k];
    return z;
  }
  bool operator==(const Matrix& o) const { return r_ == o.r_ && a_ == o.a_; }

 private:
  int r_ = 0;
  std::vector<T> a_;
};

template <class T>
bool is_unitriangular(const Matrix<T>& m, const T& zero, const T& one) {
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j <= i; ++j)
      if (!(m(i, j) == (i == j ? one : zero))) return false;
  return true;
}

/// Inverse of an upper unitriangular matrix by back substitution; works over
/// any commutative ring.
template <class T>
Matrix<T> unitriangular_inverse(const Matrix<T>& u, const T& zero, const T& one) {
  if (!is_unitriangular(u, zero, one)) throw MatrixError("matrix is not upper unitriangular");
  const int r = u.size();
  Matrix<T> x = Matrix<T>::identity(r, zero, one);
  for (int j = 0; j < r; ++j)
    for (int i = j - 1; i >= 0; --i) {
      T acc = zero;
      for (int k = i + 1; k <= j; ++k) acc = acc + u(i, k) * x(k, j);
      x(i, j) = zero - acc;
    }
  return x;
}

/// UT_r(T) as a group carrier for word evaluation.
template <class T>
struct UnitriangularGroup {
  using Element = Matrix<T>;
  int r = 1;
  T zero, one;
  Element identity() const { return Element::identity(r, zero, one); }
  Element multiply(const Element& x, const Element& y) const { return x * y; }
  Element inverse(const Element& x) const { return unitriangular_inverse(x, zero, one); }
};

template <GroupOps G>
typename G::Element group_commutator(const G& g, const typename G::Element& x, const typename G::Element& y) {
  return g.multiply(g.multiply(g.inverse(x), g.inverse(y)), g.multiply(x, y));
}

// ---------------------------------------------------------------------------
// Integer matrices.

using IntMatrix = Matrix<BigInt>;
using IntUT = UnitriangularGroup<BigInt>;
IntUT int_ut(int r);

IntMatrix int_identity(int r);
/// E^{(i,j)}_r with 1-based 1 <= i < j <= r.
IntMatrix elementary(int r, int i, int j);
/// E^{(i,j)}_r E^{(k,l)}_r computed by matrix multiplication.
IntMatrix e_product(int r, int i, int j, int k, int l);
/// I + sum of the superdiagonal E^{(i,i+1)}.
IntMatrix build_B(int r);
/// [M, B, ..., B] with n copies of B; [M] = M.
IntMatrix comm_chain(const IntMatrix& m, const IntMatrix& b, int n);

/// Cell (n, m) of the G_1 table, over ranks 2^1 .. 2^K.
struct G1Table {
  int K = 0, N = 0;
  /// identity[n][m]: s_n(A_m, B, C) is trivial in every component.
  std::vector<std::vector<char>> identity;
  /// predicate[n][m]: n + m + 3 is not one of 2^1, ..., 2^K.
  std::vector<std::vector<char>> predicate;
  /// faithful[n][m]: n + m + 3 < 2^{K+1}, so the truncated product answers
  /// the same as the infinite one.
  std::vector<std::vector<char>> faithful;
  bool matches() const { return identity == predicate; }
};
G1Table g1_witness_table(int K, int N);

/// The tuple (A_m, B, C) restricted to the component of rank r = 2^k.
struct G1Component {
  IntMatrix A, B, C;
};
G1Component g1_component(int k);

// ---------------------------------------------------------------------------
// Sparse multivariate integer polynomials.

class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(int n_vars) : n_vars_(n_vars) {}
  static MultiPoly constant(int n_vars, const BigInt& c);
  static MultiPoly variable(int n_vars, int index);

  int n_vars() const { return n_vars_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  bool operator==(const MultiPoly&) const = default;

  /// Substitutes values[i] for variable i; lift maps integer coefficients
  /// into the ring.
  template <class T>
  T evaluate(std::span<const T> values, const T& zero, const std::function<T(const BigInt&)>& lift) const {
    T acc = zero;
    for (const auto& [exps, c] : terms_) {
      T term = lift(c);
      for (int v = 0; v < n_vars_; ++v)
        for (int e = 0; e < exps[v]; ++e) term = term * values[v];
      acc = acc + term;
    }
    return acc;
  }

 private:
  void add_term(const Exponents& e, const BigInt& c);
  int n_vars_ = 0;
  std::map<Exponents, BigInt> terms_;
};

/// Graded-lex: higher total degree first, then lexicographically larger
/// exponent vectors first. names[i] labels variable i.
std::string to_string(const MultiPoly& p, std::span<const std::string> names);

/// Index of X^{(m)}_{k,l} (1-based m, k, l) among the r^2 n matrix-entry
/// variables, and its printed name.
int matrix_variable(int r, int m, int k, int l);
std::vector<std::string> matrix_variable_names(int r, int n_vars);

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Entries s_{i,j} of the symbolic product for a positive word; throws
/// MatrixError on negative exponents (positivize first).
PolyMatrix word_to_polys(const Word& s, int r);
/// s_{i,j} - delta_{i,j}.
PolyMatrix shat(const Word& s, int r);

// ---------------------------------------------------------------------------
// Z[X]/(X^{2^d} - 1).

class CyclicRingElement {
 public:
  CyclicRingElement() = default;
  explicit CyclicRingElement(int depth);
  static CyclicRingElement monomial(int depth, long long exponent, long long coefficient = 1);
  /// Image of X_j under X_j -> X^{2^{d-j}}.
  static CyclicRingElement x(int depth, int j);
  /// b_j = sum_{l < 2^j} X_j^l.
  static CyclicRingElement b(int depth, int j);

  int depth() const { return depth_; }
  const std::vector<long long>& coefficients() const { return c_; }
  bool is_zero() const;

  friend CyclicRingElement operator+(const CyclicRingElement& a, const CyclicRingElement& b);
  friend CyclicRingElement operator-(const CyclicRingElement& a, const CyclicRingElement& b);
  friend CyclicRingElement operator*(const CyclicRingElement& a, const CyclicRingElement& b);
  bool operator==(const CyclicRingElement&) const = default;

 private:
  int depth_ = 0;
  std::vector<long long> c_{0};
};

using CyclicMatrix = Matrix<CyclicRingElement>;
CyclicMatrix nnsen_A(int d, int j);
CyclicMatrix nnsen_B(int d, int k);
/// Whether [A_j, B_k] is the identity in UT_3(Z[X]/(X^{2^d} - 1)).
bool nnsen_commutator(int d, int j, int k);
/// table[j][k] = nnsen_commutator(d, j, k).
std::vector<std::vector<char>> nnsen_table(int d);

// ---------------------------------------------------------------------------
// Z/m, for checking word maps over finite rings.

struct ModInt {
  long long v = 0;
  long long m = 1;
  ModInt() = default;
  ModInt(long long value, long long modulus) : v(((value % modulus) + modulus) % modulus), m(modulus) {}
  friend ModInt operator+(ModInt a, ModInt b) { return {a.v + b.v, a.m}; }
  friend ModInt operator-(ModInt a, ModInt b) { return {a.v - b.v, a.m}; }
  friend ModInt operator*(ModInt a, ModInt b) { return {static_cast<long long>((__int128)a.v * b.v % a.m), a.m}; }
  bool operator==(const ModInt&) const = default;
};

// ---------------------------------------------------------------------------
// BS(1,2) = <a, t | t^{-1} a t = a^2> inside GL_2(Q).

using RationalMatrix = Matrix<BigRational>;

struct GL2Q {
  using Element = RationalMatrix;
  Element identity() const;
  Element multiply(const Element& x, const Element& y) const { return x * y; }
  /// Throws MatrixError on a singular matrix.
  Element inverse(const Element& x) const;
};

RationalMatrix rational_matrix(const BigRational& a, const BigRational& b, const BigRational& c,
                               const BigRational& d);
RationalMatrix bs12_a();  // [[1,1],[0,1]]
RationalMatrix bs12_t();  // diag(1,2)
/// Membership in <a> = {[[1,k],[0,1]] : k integer}.
bool in_cyclic_a(const RationalMatrix& m);
/// table[n][m]: s_n(t, a^{2^m}) in <a>, where s_n = X1^n X2 X1^{-n}.
std::vector<std::vector<char>> bs12_table(int max_n, int max_m);

}  // namespace eqnoeth
