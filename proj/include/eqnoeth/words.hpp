#pragma once

// Words in free groups F_n and in free products F_n * G, with the word-map
// evaluation and the positive / exponent-sum-zero system transforms.
//
// Both word types are stored run-length: a letter is a variable index
// (1-based) together with a nonzero exponent, so X1^5 is one letter.

#include <compare>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqnoeth {

class WordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public WordError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : WordError(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised when an exponent vector is not in the lattice spanned by a basis.
class LatticeError : public WordError {
 public:
  LatticeError(const std::string& what, std::vector<long long> residual)
      : WordError(what), residual_(std::move(residual)) {}
  const std::vector<long long>& residual() const { return residual_; }

 private:
  std::vector<long long> residual_;
};

struct Letter {
  int var = 1;  // 1-based
  long long exp = 1;
  auto operator<=>(const Letter&) const = default;
};

// ---------------------------------------------------------------------------
// Group-like carriers used by evaluation.

template <class G>
concept GroupOps = requires(const G& g, const typename G::Element& x) {
  { g.identity() } -> std::convertible_to<typename G::Element>;
  { g.multiply(x, x) } -> std::convertible_to<typename G::Element>;
  { g.inverse(x) } -> std::convertible_to<typename G::Element>;
};

template <GroupOps G>
typename G::Element group_power(const G& g, const typename G::Element& x, long long k) {
  using E = typename G::Element;
  E base = k < 0 ? E(g.inverse(x)) : x;
  unsigned long long e = k < 0 ? 0ull - static_cast<unsigned long long>(k)
                               : static_cast<unsigned long long>(k);
  E acc = g.identity();
  while (e) {
    if (e & 1u) acc = g.multiply(acc, base);
    e >>= 1u;
    if (e) base = g.multiply(base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------

/// Freely reduced element of F_n.
class Word {
 public:
  Word() = default;
  explicit Word(int n_vars);

  static Word generator(int n_vars, int var, long long exp = 1);

  int n_vars() const { return n_vars_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  /// Total number of letters counted with multiplicity (sum of |exp|).
  long long length() const;
  bool is_positive() const;

  Word inverse() const;
  Word pow(long long k) const;
  /// Same word viewed in F_m for m >= n_vars.
  Word widened(int m) const;

  friend Word operator*(const Word& a, const Word& b);
  bool operator==(const Word&) const = default;

 private:
  friend Word reduce(int n_vars, std::span<const Letter> raw);
  int n_vars_ = 1;
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence: cancels and merges
/// adjacent letters on the same variable until none remain.
Word reduce(int n_vars, std::span<const Letter> raw);
/// Reduction of an already-built word; the identity on valid words.
Word reduce(const Word& w);

Word commutator(const Word& x, const Word& y);
/// Left-nested [x_0, ..., x_k] = [[x_0, ..., x_{k-1}], x_k]; [x_0] = x_0.
Word simple_commutator(std::span<const Word> words);

/// Applies the homomorphism F_n -> F_m sending X_i to images[i-1].
Word substitute(const Word& w, std::span<const Word> images, int m);

std::vector<long long> exponent_sum(const Word& w);

/// X_i -> X_i, X_i^{-1} -> X_{n+i}. Result lives in F_{2n} and is positive.
Word positivize(const Word& w);

struct ZeroSumResult {
  std::vector<long long> alpha;  // one exponent per basis word
  Word word;                     // s_1^{alpha_1} ... s_m^{alpha_m} s
};

/// Premultiplies s by powers of the basis words so the exponent sum
/// vanishes. The exponents come from integer row echelon elimination of the
/// basis exponent vectors; they are one valid choice, not the only one.
/// Throws LatticeError if exponent_sum(s) is outside the spanned lattice.
ZeroSumResult zero_sum_transform(const Word& s, std::span<const Word> basis);

template <GroupOps G>
typename G::Element evaluate(const Word& w, std::span<const typename G::Element> tuple,
                             const G& group) {
  if (tuple.size() != static_cast<std::size_t>(w.n_vars()))
    throw WordError("evaluate: tuple has " + std::to_string(tuple.size()) +
                    " entries, word has " + std::to_string(w.n_vars()) + " variables");
  auto acc = group.identity();
  for (const auto& l : w.letters())
    acc = group.multiply(acc, group_power(group, tuple[l.var - 1], l.exp));
  return acc;
}

// ---------------------------------------------------------------------------
// Words with coefficients.

struct TokenPower {
  int token = 0;  // index into the coefficient table, printed as g<token>
  long long exp = 1;
  auto operator<=>(const TokenPower&) const = default;
};

/// A maximal run of coefficient tokens, kept as an (unevaluated) product.
struct Coefficient {
  std::vector<TokenPower> factors;
  auto operator<=>(const Coefficient&) const = default;
};

using Piece = std::variant<Letter, Coefficient>;

/// Element of F_n * G with G left opaque. Coefficients are references into a
/// table supplied at evaluation time; adjacent coefficient tokens are merged
/// into one Coefficient piece and variable runs are freely reduced.
class MixedWord {
 public:
  MixedWord() = default;
  explicit MixedWord(int n_vars);
  MixedWord(const Word& w);  // NOLINT: words are mixed words without coefficients

  static MixedWord from_pieces(int n_vars, std::span<const Piece> pieces);
  static MixedWord coefficient(int n_vars, int token, long long exp = 1);

  int n_vars() const { return n_vars_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool has_coefficients() const;
  long long length() const;
  bool is_positive() const;
  /// The underlying Word; throws if coefficients are present.
  Word to_word() const;

  MixedWord inverse() const;
  MixedWord pow(long long k) const;
  MixedWord widened(int m) const;

  friend MixedWord operator*(const MixedWord& a, const MixedWord& b);
  bool operator==(const MixedWord&) const = default;

 private:
  int n_vars_ = 1;
  std::vector<Piece> pieces_;
};

MixedWord commutator(const MixedWord& x, const MixedWord& y);
std::vector<long long> exponent_sum(const MixedWord& w);
MixedWord positivize(const MixedWord& w);

template <GroupOps G>
typename G::Element evaluate(const MixedWord& w, std::span<const typename G::Element> tuple,
                             std::span<const typename G::Element> coefficients, const G& group) {
  if (tuple.size() != static_cast<std::size_t>(w.n_vars()))
    throw WordError("evaluate: tuple has " + std::to_string(tuple.size()) +
                    " entries, word has " + std::to_string(w.n_vars()) + " variables");
  auto acc = group.identity();
  for (const auto& piece : w.pieces()) {
    if (const auto* l = std::get_if<Letter>(&piece)) {
      acc = group.multiply(acc, group_power(group, tuple[l->var - 1], l->exp));
      continue;
    }
    for (const auto& f : std::get<Coefficient>(piece).factors) {
      if (f.token < 0 || static_cast<std::size_t>(f.token) >= coefficients.size())
        throw WordError("evaluate: coefficient g" + std::to_string(f.token) +
                        " is not in the supplied table of " +
                        std::to_string(coefficients.size()));
      acc = group.multiply(acc, group_power(group, coefficients[f.token], f.exp));
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Text form.
//
//   word := term*        term := atom | atom '^' int
//   atom := 'X' digits | '[' word ',' word ']' | '(' word ')' | 'g' digits
//
// Printing emits only X and g atoms; the empty word prints as "".

/// Parses a word; n_vars = 0 infers the rank from the largest index used.
MixedWord parse_mixed_word(std::string_view text, int n_vars = 0);
/// As parse_mixed_word, but coefficient atoms are an error.
Word parse_word(std::string_view text, int n_vars = 0);

std::string to_string(const Word& w);
std::string to_string(const MixedWord& w);

struct EquationSystem {
  int n_vars = 1;
  std::vector<MixedWord> equations;

  bool coefficient_free() const;
  /// Equations as plain words; throws if any carries coefficients.
  std::vector<Word> words() const;
};

/// One equation per line; blank lines and text after '#' are ignored.
/// n_vars = 0 infers the common rank.
EquationSystem parse_system(std::string_view text, int n_vars = 0);
std::string to_string(const EquationSystem& s);

}  // namespace eqnoeth
