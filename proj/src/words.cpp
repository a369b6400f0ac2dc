#include "eqnoeth/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace eqnoeth {

namespace {

// A flattened symbol: variables and coefficient tokens share one alphabet so
// that free reduction treats F_n * F(tokens) uniformly.
struct Symbol {
  bool coefficient = false;
  int index = 0;
  long long exp = 0;
};

void push_reduced(std::vector<Symbol>& stack, Symbol s) {
  if (s.exp == 0) return;
  if (!stack.empty() && stack.back().coefficient == s.coefficient && stack.back().index == s.index) {
    stack.back().exp += s.exp;
    if (stack.back().exp == 0) stack.pop_back();
    return;
  }
  stack.push_back(s);
}

void check_var(int n_vars, int var) {
  if (var < 1 || var > n_vars)
    throw WordError("variable X" + std::to_string(var) + " outside F_" + std::to_string(n_vars));
}

std::vector<Symbol> flatten(const MixedWord& w) {
  std::vector<Symbol> out;
  for (const auto& piece : w.pieces()) {
    if (const auto* l = std::get_if<Letter>(&piece)) {
      out.push_back({false, l->var, l->exp});
    } else {
      for (const auto& f : std::get<Coefficient>(piece).factors) out.push_back({true, f.token, f.exp});
    }
  }
  return out;
}

std::vector<Piece> regroup(const std::vector<Symbol>& symbols) {
  std::vector<Piece> pieces;
  for (const auto& s : symbols) {
    if (!s.coefficient) {
      pieces.emplace_back(Letter{s.index, s.exp});
      continue;
    }
    if (pieces.empty() || !std::holds_alternative<Coefficient>(pieces.back()))
      pieces.emplace_back(Coefficient{});
    std::get<Coefficient>(pieces.back()).factors.push_back({s.index, s.exp});
  }
  return pieces;
}

}  // namespace

// ---------------------------------------------------------------------------
// Word

Word::Word(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 1) throw WordError("word rank must be positive");
}

Word Word::generator(int n_vars, int var, long long exp) {
  Letter l{var, exp};
  return reduce(n_vars, std::span<const Letter>(&l, 1));
}

long long Word::length() const {
  long long n = 0;
  for (const auto& l : letters_) n += std::llabs(l.exp);
  return n;
}

bool Word::is_positive() const {
  return std::all_of(letters_.begin(), letters_.end(), [](const Letter& l) { return l.exp > 0; });
}

Word Word::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (auto& l : inv) l.exp = -l.exp;
  return reduce(n_vars_, inv);
}

Word Word::pow(long long k) const {
  Word base = k < 0 ? inverse() : *this;
  Word acc(n_vars_);
  for (long long i = 0; i < std::llabs(k); ++i) acc = acc * base;
  return acc;
}

Word Word::widened(int m) const {
  if (m < n_vars_) throw WordError("cannot narrow a word");
  Word w = *this;
  w.n_vars_ = m;
  return w;
}

Word operator*(const Word& a, const Word& b) {
  if (a.n_vars_ != b.n_vars_) throw WordError("product of words of different ranks");
  std::vector<Letter> raw = a.letters_;
  raw.insert(raw.end(), b.letters_.begin(), b.letters_.end());
  return reduce(a.n_vars_, raw);
}

Word reduce(int n_vars, std::span<const Letter> raw) {
  Word w(n_vars);
  std::vector<Symbol> stack;
  for (const auto& l : raw) {
    check_var(n_vars, l.var);
    push_reduced(stack, {false, l.var, l.exp});
  }
  w.letters_.reserve(stack.size());
  for (const auto& s : stack) w.letters_.push_back({s.index, s.exp});
  return w;
}

Word reduce(const Word& w) { return reduce(w.n_vars(), w.letters()); }

Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

Word simple_commutator(std::span<const Word> words) {
  if (words.empty()) throw WordError("simple commutator of an empty sequence");
  Word acc = words.front();
  for (std::size_t i = 1; i < words.size(); ++i) acc = commutator(acc, words[i]);
  return acc;
}

Word substitute(const Word& w, std::span<const Word> images, int m) {
  if (images.size() != static_cast<std::size_t>(w.n_vars()))
    throw WordError("substitute: need one image per variable");
  Word acc(m);
  for (const auto& l : w.letters()) {
    const Word& img = images[l.var - 1];
    if (img.n_vars() != m) throw WordError("substitute: image rank mismatch");
    acc = acc * img.pow(l.exp);
  }
  return acc;
}

std::vector<long long> exponent_sum(const Word& w) {
  std::vector<long long> v(w.n_vars(), 0);
  for (const auto& l : w.letters()) v[l.var - 1] += l.exp;
  return v;
}

Word positivize(const Word& w) {
  int n = w.n_vars();
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    if (l.exp > 0)
      out.push_back(l);
    else
      out.push_back({n + l.var, -l.exp});
  }
  return reduce(2 * n, out);
}

ZeroSumResult zero_sum_transform(const Word& s, std::span<const Word> basis) {
  const int n = s.n_vars();
  const std::size_t m = basis.size();
  for (const auto& b : basis)
    if (b.n_vars() != n) throw WordError("zero_sum_transform: basis rank mismatch");

  // Rows hold (exponent vector | unimodular transform), reduced to row
  // echelon form by integer Euclid steps.
  struct Row {
    std::vector<long long> v;
    std::vector<long long> u;
  };
  std::vector<Row> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].v = exponent_sum(basis[i]);
    rows[i].u.assign(m, 0);
    rows[i].u[i] = 1;
  }
  auto axpy = [](Row& dst, const Row& src, long long q) {
    for (std::size_t k = 0; k < dst.v.size(); ++k) dst.v[k] -= q * src.v[k];
    for (std::size_t k = 0; k < dst.u.size(); ++k) dst.u[k] -= q * src.u[k];
  };

  std::vector<std::pair<int, std::size_t>> pivots;  // (column, row)
  std::size_t next = 0;
  for (int col = 0; col < n && next < m; ++col) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t r = next; r < m; ++r)
        if (rows[r].v[col] != 0 && (best == m || std::llabs(rows[r].v[col]) < std::llabs(rows[best].v[col])))
          best = r;
      if (best == m) break;
      std::swap(rows[next], rows[best]);
      bool done = true;
      for (std::size_t r = next + 1; r < m; ++r) {
        if (rows[r].v[col] == 0) continue;
        axpy(rows[r], rows[next], rows[r].v[col] / rows[next].v[col]);
        if (rows[r].v[col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[next].v[col] == 0) continue;
    if (rows[next].v[col] < 0) {
      for (auto& x : rows[next].v) x = -x;
      for (auto& x : rows[next].u) x = -x;
    }
    pivots.emplace_back(col, next);
    ++next;
  }

  // Solve sum alpha_i psi(s_i) = -psi(s).
  std::vector<long long> residual = exponent_sum(s);
  for (auto& x : residual) x = -x;
  std::vector<long long> alpha(m, 0);
  std::size_t pi = 0;
  for (int col = 0; col < n; ++col) {
    if (pi < pivots.size() && pivots[pi].first == col) {
      const Row& row = rows[pivots[pi].second];
      long long p = row.v[col];
      if (residual[col] % p != 0) break;
      long long q = residual[col] / p;
      for (int k = 0; k < n; ++k) residual[k] -= q * row.v[k];
      for (std::size_t k = 0; k < m; ++k) alpha[k] += q * row.u[k];
      ++pi;
    } else if (residual[col] != 0) {
      break;
    }
  }
  if (std::any_of(residual.begin(), residual.end(), [](long long x) { return x != 0; })) {
    for (auto& x : residual) x = -x;
    throw LatticeError("exponent sum not in the lattice spanned by the basis", residual);
  }

  Word out(n);
  for (std::size_t i = 0; i < m; ++i) out = out * basis[i].pow(alpha[i]);
  out = out * s;
  return {alpha, out};
}

// ---------------------------------------------------------------------------
// MixedWord

MixedWord::MixedWord(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 1) throw WordError("word rank must be positive");
}

MixedWord::MixedWord(const Word& w) : n_vars_(w.n_vars()) {
  for (const auto& l : w.letters()) pieces_.emplace_back(l);
}

MixedWord MixedWord::from_pieces(int n_vars, std::span<const Piece> pieces) {
  MixedWord w(n_vars);
  std::vector<Symbol> stack;
  for (const auto& piece : pieces) {
    if (const auto* l = std::get_if<Letter>(&piece)) {
      check_var(n_vars, l->var);
      push_reduced(stack, {false, l->var, l->exp});
    } else {
      for (const auto& f : std::get<Coefficient>(piece).factors) {
        if (f.token < 0) throw WordError("negative coefficient token");
        push_reduced(stack, {true, f.token, f.exp});
      }
    }
  }
  w.pieces_ = regroup(stack);
  return w;
}

MixedWord MixedWord::coefficient(int n_vars, int token, long long exp) {
  Piece p = Coefficient{{TokenPower{token, exp}}};
  return from_pieces(n_vars, std::span<const Piece>(&p, 1));
}

bool MixedWord::has_coefficients() const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [](const Piece& p) { return std::holds_alternative<Coefficient>(p); });
}

long long MixedWord::length() const {
  long long n = 0;
  for (const auto& s : flatten(*this)) n += std::llabs(s.exp);
  return n;
}

bool MixedWord::is_positive() const {
  for (const auto& p : pieces_)
    if (const auto* l = std::get_if<Letter>(&p); l && l->exp < 0) return false;
  return true;
}

Word MixedWord::to_word() const {
  if (has_coefficients()) throw WordError("word carries coefficients");
  std::vector<Letter> letters;
  for (const auto& p : pieces_) letters.push_back(std::get<Letter>(p));
  return reduce(n_vars_, letters);
}

MixedWord MixedWord::inverse() const {
  std::vector<Symbol> sym = flatten(*this);
  std::reverse(sym.begin(), sym.end());
  for (auto& s : sym) s.exp = -s.exp;
  MixedWord w(n_vars_);
  w.pieces_ = regroup(sym);
  return w;
}

MixedWord MixedWord::pow(long long k) const {
  MixedWord base = k < 0 ? inverse() : *this;
  MixedWord acc(n_vars_);
  for (long long i = 0; i < std::llabs(k); ++i) acc = acc * base;
  return acc;
}

MixedWord MixedWord::widened(int m) const {
  if (m < n_vars_) throw WordError("cannot narrow a word");
  MixedWord w = *this;
  w.n_vars_ = m;
  return w;
}

MixedWord operator*(const MixedWord& a, const MixedWord& b) {
  if (a.n_vars_ != b.n_vars_) throw WordError("product of words of different ranks");
  std::vector<Piece> raw = a.pieces_;
  raw.insert(raw.end(), b.pieces_.begin(), b.pieces_.end());
  return MixedWord::from_pieces(a.n_vars_, raw);
}

MixedWord commutator(const MixedWord& x, const MixedWord& y) {
  return x.inverse() * y.inverse() * x * y;
}

std::vector<long long> exponent_sum(const MixedWord& w) {
  std::vector<long long> v(w.n_vars(), 0);
  for (const auto& p : w.pieces())
    if (const auto* l = std::get_if<Letter>(&p)) v[l->var - 1] += l->exp;
  return v;
}

MixedWord positivize(const MixedWord& w) {
  int n = w.n_vars();
  std::vector<Piece> out;
  for (const auto& p : w.pieces()) {
    if (const auto* l = std::get_if<Letter>(&p); l && l->exp < 0)
      out.emplace_back(Letter{n + l->var, -l->exp});
    else
      out.push_back(p);
  }
  return MixedWord::from_pieces(2 * n, out);
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  // Returns the raw piece list; ranks are settled by the caller.
  std::vector<Piece> parse_all() {
    auto pieces = parse_word();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return pieces;
  }

  int max_var() const { return max_var_; }

 private:
  std::vector<Piece> parse_word() {
    std::vector<Piece> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c != 'X' && c != 'g' && c != '[' && c != '(') break;
      auto term = parse_term();
      out.insert(out.end(), term.begin(), term.end());
    }
    return out;
  }

  std::vector<Piece> parse_term() {
    std::vector<Piece> atom = parse_atom();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      long long k = parse_int();
      return power(atom, k);
    }
    return atom;
  }

  std::vector<Piece> parse_atom() {
    skip_space();
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == 'X') {
      ++pos_;
      long long v = parse_digits();
      if (v < 1) fail("variable index must be positive", start);
      max_var_ = std::max<int>(max_var_, static_cast<int>(v));
      return {Letter{static_cast<int>(v), 1}};
    }
    if (c == 'g') {
      ++pos_;
      long long t = parse_digits();
      return {Coefficient{{TokenPower{static_cast<int>(t), 1}}}};
    }
    if (c == '(') {
      ++pos_;
      auto inner = parse_word();
      expect(')');
      return inner;
    }
    // '['
    ++pos_;
    auto x = parse_word();
    expect(',');
    auto y = parse_word();
    expect(']');
    auto xi = invert(x), yi = invert(y);
    std::vector<Piece> out = xi;
    out.insert(out.end(), yi.begin(), yi.end());
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
  }

  static std::vector<Piece> invert(const std::vector<Piece>& w) {
    std::vector<Piece> out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (const auto* l = std::get_if<Letter>(&*it)) {
        out.emplace_back(Letter{l->var, -l->exp});
      } else {
        Coefficient c;
        const auto& f = std::get<Coefficient>(*it).factors;
        for (auto jt = f.rbegin(); jt != f.rend(); ++jt) c.factors.push_back({jt->token, -jt->exp});
        out.emplace_back(std::move(c));
      }
    }
    return out;
  }

  static std::vector<Piece> power(const std::vector<Piece>& w, long long k) {
    if (w.size() == 1) {
      // single-piece atoms keep run-length form
      if (const auto* l = std::get_if<Letter>(&w[0])) return {Letter{l->var, l->exp * k}};
      const auto& f = std::get<Coefficient>(w[0]).factors;
      if (f.size() == 1) return {Coefficient{{TokenPower{f[0].token, f[0].exp * k}}}};
    }
    std::vector<Piece> base = k < 0 ? invert(w) : w;
    std::vector<Piece> out;
    for (long long i = 0; i < std::llabs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long long parse_digits() {
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000'000) fail("index too large", start);
      ++pos_;
    }
    if (pos_ == start) fail("expected digits");
    return v;
  }

  long long parse_int() {
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    long long v = parse_digits();
    return neg ? -v : v;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
};

}  // namespace

MixedWord parse_mixed_word(std::string_view text, int n_vars) {
  Parser p(text);
  auto pieces = p.parse_all();
  if (n_vars == 0) n_vars = std::max(1, p.max_var());
  if (p.max_var() > n_vars)
    throw ParseError("X" + std::to_string(p.max_var()) + " exceeds rank " + std::to_string(n_vars), 0);
  return MixedWord::from_pieces(n_vars, pieces);
}

Word parse_word(std::string_view text, int n_vars) {
  MixedWord w = parse_mixed_word(text, n_vars);
  if (w.has_coefficients()) throw ParseError("coefficient atom in a coefficient-free word", 0);
  return w.to_word();
}

namespace {

void print_power(std::ostringstream& os, char atom, long long index, long long exp) {
  os << atom << index;
  if (exp != 1) os << '^' << exp;
}

}  // namespace

std::string to_string(const Word& w) { return to_string(MixedWord(w)); }

std::string to_string(const MixedWord& w) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << ' ';
    first = false;
  };
  for (const auto& p : w.pieces()) {
    if (const auto* l = std::get_if<Letter>(&p)) {
      sep();
      print_power(os, 'X', l->var, l->exp);
    } else {
      for (const auto& f : std::get<Coefficient>(p).factors) {
        sep();
        print_power(os, 'g', f.token, f.exp);
      }
    }
  }
  return os.str();
}

bool EquationSystem::coefficient_free() const {
  return std::none_of(equations.begin(), equations.end(),
                      [](const MixedWord& w) { return w.has_coefficients(); });
}

std::vector<Word> EquationSystem::words() const {
  std::vector<Word> out;
  out.reserve(equations.size());
  for (const auto& e : equations) out.push_back(e.to_word());
  return out;
}

EquationSystem parse_system(std::string_view text, int n_vars) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = std::all_of(line.begin(), line.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) lines.push_back(line);
    start = end + 1;
  }

  int rank = n_vars;
  if (rank == 0) {
    rank = 1;
    for (auto line : lines) rank = std::max(rank, parse_mixed_word(line).n_vars());
  }
  EquationSystem sys;
  sys.n_vars = rank;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      sys.equations.push_back(parse_mixed_word(lines[i], rank));
    } catch (const ParseError& e) {
      throw ParseError("equation " + std::to_string(i + 1) + ": " + e.what(), e.position());
    }
  }
  return sys;
}

std::string to_string(const EquationSystem& s) {
  std::string out;
  for (const auto& e : s.equations) out += to_string(e) + "\n";
  return out;
}

}  // namespace eqnoeth
