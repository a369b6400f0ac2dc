#include "eqnoeth/matpoly.hpp"

#include <algorithm>
#include <numeric>

namespace eqnoeth {

// ---------------------------------------------------------------------------
// Integer matrices

IntUT int_ut(int r) { return IntUT{r, BigInt(0), BigInt(1)}; }

IntMatrix int_identity(int r) { return IntMatrix::identity(r, BigInt(0), BigInt(1)); }

IntMatrix elementary(int r, int i, int j) {
  if (!(1 <= i && i < j && j <= r))
    throw MatrixError("E^(" + std::to_string(i) + "," + std::to_string(j) + ") needs 1 <= i < j <= r = " +
                      std::to_string(r));
  IntMatrix e(r, BigInt(0));
  e(i - 1, j - 1) = 1;
  return e;
}

IntMatrix e_product(int r, int i, int j, int k, int l) { return elementary(r, i, j) * elementary(r, k, l); }

IntMatrix build_B(int r) {
  if (r < 1) throw MatrixError("rank must be positive");
  IntMatrix b = int_identity(r);
  for (int i = 0; i + 1 < r; ++i) b(i, i + 1) = 1;
  return b;
}

IntMatrix comm_chain(const IntMatrix& m, const IntMatrix& b, int n) {
  if (m.size() != b.size()) throw MatrixError("comm_chain: dimension mismatch");
  if (n < 0) throw MatrixError("comm_chain: negative length");
  const auto g = int_ut(m.size());
  if (!is_unitriangular(m, g.zero, g.one) || !is_unitriangular(b, g.zero, g.one))
    throw MatrixError("comm_chain: matrices must be upper unitriangular");
  IntMatrix x = m;
  const IntMatrix id = g.identity();
  for (int i = 0; i < n && !(x == id); ++i) x = group_commutator(g, x, b);
  return x;
}

G1Component g1_component(int k) {
  if (k < 1 || k > 12) throw MatrixError("component exponent out of range");
  const int r = 1 << k;
  return {int_identity(r) + elementary(r, 1, 2), build_B(r), int_identity(r) + elementary(r, r - 1, r)};
}

G1Table g1_witness_table(int K, int N) {
  if (K < 1 || N < 0) throw MatrixError("g1_witness_table needs K >= 1 and N >= 0");
  G1Table t;
  t.K = K;
  t.N = N;
  t.identity.assign(N + 1, std::vector<char>(N + 1, 1));
  t.predicate.assign(N + 1, std::vector<char>(N + 1, 1));
  t.faithful.assign(N + 1, std::vector<char>(N + 1, 1));
  for (int k = 1; k <= K; ++k) {
    const auto c = g1_component(k);
    const auto g = int_ut(1 << k);
    // [A, B, ..., B] with i copies; s_n(A_m, B, C) = [chain[m + n], C].
    std::vector<IntMatrix> chain{c.A};
    for (int i = 1; i <= 2 * N; ++i) chain.push_back(group_commutator(g, chain.back(), c.B));
    const IntMatrix id = g.identity();
    for (int n = 0; n <= N; ++n)
      for (int m = 0; m <= N; ++m)
        if (!(group_commutator(g, chain[n + m], c.C) == id)) t.identity[n][m] = 0;
  }
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m) {
      const long long v = n + m + 3;
      for (int k = 1; k <= K; ++k)
        if (v == (1LL << k)) t.predicate[n][m] = 0;
      t.faithful[n][m] = v < (1LL << (K + 1));
    }
  return t;
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly MultiPoly::constant(int n_vars, const BigInt& c) {
  MultiPoly p(n_vars);
  p.add_term(Exponents(n_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars) throw MatrixError("polynomial variable out of range");
  MultiPoly p(n_vars);
  Exponents e(n_vars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

void MultiPoly::add_term(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {
void require_same(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars() != b.n_vars()) throw MatrixError("polynomials over different variable sets");
}
}  // namespace

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  require_same(a, b);
  MultiPoly c = a;
  for (const auto& [e, k] : b.terms_) c.add_term(e, k);
  return c;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  require_same(a, b);
  MultiPoly c = a;
  for (const auto& [e, k] : b.terms_) c.add_term(e, -k);
  return c;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same(a, b);
  MultiPoly c(a.n_vars_);
  MultiPoly::Exponents e(a.n_vars_);
  for (const auto& [ea, ka] : a.terms_)
    for (const auto& [eb, kb] : b.terms_) {
      for (int i = 0; i < a.n_vars_; ++i) e[i] = ea[i] + eb[i];
      c.add_term(e, ka * kb);
    }
  return c;
}

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<MultiPoly::Exponents, BigInt>> terms(p.terms().begin(), p.terms().end());
  auto degree = [](const MultiPoly::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); };
  std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
    int dx = degree(x.first), dy = degree(y.first);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string mono;
    for (int v = 0; v < p.n_vars(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += static_cast<std::size_t>(v) < names.size() ? names[v] : "x" + std::to_string(v);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty())
      out += mag.str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.str() + "*" + mono;
  }
  return out;
}

int matrix_variable(int r, int m, int k, int l) { return ((m - 1) * r + (k - 1)) * r + (l - 1); }

std::vector<std::string> matrix_variable_names(int r, int n_vars) {
  std::vector<std::string> names(static_cast<std::size_t>(r) * r * n_vars);
  for (int m = 1; m <= n_vars; ++m)
    for (int k = 1; k <= r; ++k)
      for (int l = 1; l <= r; ++l)
        names[matrix_variable(r, m, k, l)] =
            "X" + std::to_string(m) + "[" + std::to_string(k) + "," + std::to_string(l) + "]";
  return names;
}

PolyMatrix word_to_polys(const Word& s, int r) {
  if (r < 1) throw MatrixError("rank must be positive");
  if (!s.is_positive()) throw MatrixError("word_to_polys needs an inverse-free word; positivize it first");
  const int nv = r * r * s.n_vars();
  auto generic = [&](int m) {
    PolyMatrix x(r, std::vector<MultiPoly>(r, MultiPoly(nv)));
    for (int k = 1; k <= r; ++k)
      for (int l = 1; l <= r; ++l) x[k - 1][l - 1] = MultiPoly::variable(nv, matrix_variable(r, m, k, l));
    return x;
  };
  PolyMatrix acc(r, std::vector<MultiPoly>(r, MultiPoly(nv)));
  for (int i = 0; i < r; ++i) acc[i][i] = MultiPoly::constant(nv, 1);
  for (const auto& letter : s.letters()) {
    const PolyMatrix x = generic(letter.var);
    for (long long rep = 0; rep < letter.exp; ++rep) {
      PolyMatrix next(r, std::vector<MultiPoly>(r, MultiPoly(nv)));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          for (int k = 0; k < r; ++k) next[i][j] = next[i][j] + acc[i][k] * x[k][j];
      acc = std::move(next);
    }
  }
  return acc;
}

PolyMatrix shat(const Word& s, int r) {
  PolyMatrix p = word_to_polys(s, r);
  const int nv = r * r * s.n_vars();
  for (int i = 0; i < r; ++i) p[i][i] = p[i][i] - MultiPoly::constant(nv, 1);
  return p;
}

// ---------------------------------------------------------------------------
// Cyclic ring

namespace {
constexpr int kMaxDepth = 24;

void check_depth(int d) {
  if (d < 0 || d > kMaxDepth) throw MatrixError("depth must lie in 0.." + std::to_string(kMaxDepth));
}
void check_same_depth(const CyclicRingElement& a, const CyclicRingElement& b) {
  if (a.depth() != b.depth()) throw MatrixError("cyclic ring elements of different depth");
}
}  // namespace

CyclicRingElement::CyclicRingElement(int depth) : depth_(depth) {
  check_depth(depth);
  c_.assign(std::size_t{1} << depth, 0);
}

CyclicRingElement CyclicRingElement::monomial(int depth, long long exponent, long long coefficient) {
  CyclicRingElement e(depth);
  const long long n = static_cast<long long>(e.c_.size());
  e.c_[static_cast<std::size_t>(((exponent % n) + n) % n)] = coefficient;
  return e;
}

CyclicRingElement CyclicRingElement::x(int depth, int j) {
  if (j < 0 || j > depth) throw MatrixError("X_j needs 0 <= j <= depth");
  return monomial(depth, 1LL << (depth - j));
}

CyclicRingElement CyclicRingElement::b(int depth, int j) {
  if (j < 0 || j > depth) throw MatrixError("b_j needs 0 <= j <= depth");
  CyclicRingElement acc(depth);
  const CyclicRingElement xj = x(depth, j);
  CyclicRingElement p = monomial(depth, 0);
  for (long long l = 0; l < (1LL << j); ++l) {
    acc = acc + p;
    p = p * xj;
  }
  return acc;
}

bool CyclicRingElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](long long v) { return v == 0; });
}

CyclicRingElement operator+(const CyclicRingElement& a, const CyclicRingElement& b) {
  check_same_depth(a, b);
  CyclicRingElement c = a;
  for (std::size_t i = 0; i < c.c_.size(); ++i) c.c_[i] += b.c_[i];
  return c;
}

CyclicRingElement operator-(const CyclicRingElement& a, const CyclicRingElement& b) {
  check_same_depth(a, b);
  CyclicRingElement c = a;
  for (std::size_t i = 0; i < c.c_.size(); ++i) c.c_[i] -= b.c_[i];
  return c;
}

CyclicRingElement operator*(const CyclicRingElement& a, const CyclicRingElement& b) {
  check_same_depth(a, b);
  CyclicRingElement c(a.depth_);
  const std::size_t n = c.c_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) c.c_[(i + j) & (n - 1)] += a.c_[i] * b.c_[j];
  }
  return c;
}

namespace {
UnitriangularGroup<CyclicRingElement> cyclic_ut3(int d) {
  return {3, CyclicRingElement(d), CyclicRingElement::monomial(d, 0)};
}
}  // namespace

CyclicMatrix nnsen_A(int d, int j) {
  auto g = cyclic_ut3(d);
  CyclicMatrix a = g.identity();
  a(0, 1) = g.one;
  a(1, 2) = CyclicRingElement::x(d, j);
  return a;
}

CyclicMatrix nnsen_B(int d, int k) {
  auto g = cyclic_ut3(d);
  CyclicMatrix b = g.identity();
  b(0, 1) = CyclicRingElement::b(d, k);
  b(1, 2) = b(0, 1);
  return b;
}

bool nnsen_commutator(int d, int j, int k) {
  check_depth(d);
  if (j < 0 || j > d || k < 0 || k > d) throw MatrixError("nnsen_commutator needs 0 <= j, k <= d");
  auto g = cyclic_ut3(d);
  return group_commutator(g, nnsen_A(d, j), nnsen_B(d, k)) == g.identity();
}

std::vector<std::vector<char>> nnsen_table(int d) {
  check_depth(d);
  std::vector<std::vector<char>> t(d + 1, std::vector<char>(d + 1));
  for (int j = 0; j <= d; ++j)
    for (int k = 0; k <= d; ++k) t[j][k] = nnsen_commutator(d, j, k);
  return t;
}

// ---------------------------------------------------------------------------
// BS(1,2)

RationalMatrix rational_matrix(const BigRational& a, const BigRational& b, const BigRational& c,
                               const BigRational& d) {
  RationalMatrix m(2, BigRational(0));
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  if (a * d - b * c == 0) throw MatrixError("singular matrix");
  return m;
}

GL2Q::Element GL2Q::identity() const { return rational_matrix(1, 0, 0, 1); }

GL2Q::Element GL2Q::inverse(const Element& x) const {
  BigRational det = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  if (det == 0) throw MatrixError("singular matrix");
  return rational_matrix(x(1, 1) / det, -x(0, 1) / det, -x(1, 0) / det, x(0, 0) / det);
}

RationalMatrix bs12_a() { return rational_matrix(1, 1, 0, 1); }
RationalMatrix bs12_t() { return rational_matrix(1, 0, 0, 2); }

bool in_cyclic_a(const RationalMatrix& m) {
  using boost::multiprecision::denominator;
  return m.size() == 2 && m(0, 0) == 1 && m(1, 1) == 1 && m(1, 0) == 0 && denominator(m(0, 1)) == 1;
}

std::vector<std::vector<char>> bs12_table(int max_n, int max_m) {
  if (max_n < 0 || max_m < 0) throw MatrixError("bs12_table needs nonnegative bounds");
  GL2Q g;
  std::vector<std::vector<char>> t(max_n + 1, std::vector<char>(max_m + 1));
  for (int n = 0; n <= max_n; ++n) {
    const Letter raw[] = {{1, n}, {2, 1}, {1, -n}};
    const Word s = reduce(2, raw);
    for (int m = 0; m <= max_m; ++m) {
      const RationalMatrix tuple[] = {bs12_t(), group_power(g, bs12_a(), 1LL << m)};
      t[n][m] = in_cyclic_a(evaluate(s, std::span<const RationalMatrix>(tuple), g));
    }
  }
  return t;
}

}  // namespace eqnoeth
