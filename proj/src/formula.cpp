#include "possdom/formula.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <optional>
#include <sstream>

#include "possdom/domain.hpp"
#include "possdom/errors.hpp"
#include "possdom/kernels.hpp"

namespace possdom {

Assignment Assignment::from_string(std::string_view s) {
  if (s.size() > static_cast<std::size_t>(kMaxPackedArity))
    throw InputError("assignment longer than 64 coordinates");
  Assignment a{static_cast<int>(s.size()), 0};
  for (char c : s) {
    if (c != '0' && c != '1') throw InputError(std::string("non-binary character '") + c + "'");
    a.bits = (a.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return a;
}

std::vector<int> Clause::variables() const {
  std::vector<int> vs;
  vs.reserve(size());
  for (const auto& l : or_literals) vs.push_back(l.var);
  for (const auto& l : xor_literals) vs.push_back(l.var);
  return vs;
}

bool Clause::satisfied_by(const Assignment& a) const {
  bool any = false;
  for (const auto& l : or_literals) any = any || l.satisfied_by(a);
  if (kind == ClauseKind::Or) return any;
  bool parity = false;
  for (const auto& l : xor_literals) parity ^= l.satisfied_by(a);
  return any || parity;
}

namespace {

void validate_clause(const Clause& c, int n, std::size_t index) {
  auto where = [&] { return "clause " + std::to_string(index + 1) + ": "; };
  switch (c.kind) {
    case ClauseKind::Or:
      if (c.or_literals.empty() || !c.xor_literals.empty())
        throw InputError(where() + "disjunctive clause needs literals and no parity part");
      break;
    case ClauseKind::Xor:
      if (c.xor_literals.empty() || !c.or_literals.empty())
        throw InputError(where() + "parity clause needs literals and no disjunctive part");
      break;
    case ClauseKind::Generalized:
      if (c.xor_literals.empty() || c.or_literals.empty())
        throw InputError(where() + "generalized clause needs both parts");
      break;
  }
  std::vector<int> vs = c.variables();
  for (int v : vs)
    if (v < 1 || v > n) throw InputError(where() + "variable " + std::to_string(v) + " out of range");
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    throw InputError(where() + "repeated variable");
}

}  // namespace

Formula::Formula(int num_vars, std::vector<Clause> clauses) : n_(num_vars), clauses_(std::move(clauses)) {
  if (n_ < 1) throw InputError("formula needs at least one variable");
  for (std::size_t i = 0; i < clauses_.size(); ++i) validate_clause(clauses_[i], n_, i);
}

VarSet Formula::occurring_variables() const {
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& c : clauses_)
    for (int v : c.variables()) seen[static_cast<std::size_t>(v)] = 1;
  VarSet out;
  for (int v = 1; v <= n_; ++v)
    if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

std::size_t Formula::length() const {
  std::size_t s = 0;
  for (const auto& c : clauses_) s += c.size();
  return s;
}

namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Next token, skipping whitespace and comment lines.
  std::optional<Token> next() {
    for (;;) {
      while (pos_ < text_.size() && is_space(text_[pos_])) advance();
      if (pos_ >= text_.size()) return std::nullopt;
      if (text_[pos_] == 'c' && at_line_start_ && (pos_ + 1 == text_.size() || is_space(text_[pos_ + 1]))) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      Token t{{}, line_, col_};
      std::size_t start = pos_;
      while (pos_ < text_.size() && !is_space(text_[pos_])) advance();
      t.text = text_.substr(start, pos_ - start);
      return t;
    }
  }

  int line() const { return line_; }
  int column() const { return col_; }

private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      at_line_start_ = true;
    } else {
      ++col_;
      if (!is_space(text_[pos_])) at_line_start_ = false;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool at_line_start_ = true;
};

long long parse_int(const Token& t, const char* what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(t.text) + "'", t.line, t.column);
  return v;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Lexer lex(text);
  auto expect = [&](const char* what) {
    auto t = lex.next();
    if (!t) throw ParseError(std::string("unexpected end of input, expected ") + what, lex.line(), lex.column());
    return *t;
  };

  Token p = expect("header");
  if (p.text != "p") throw ParseError("expected header 'p ecnf <nvars> <nclauses>'", p.line, p.column);
  Token fmt = expect("format");
  if (fmt.text != "ecnf" && fmt.text != "cnf")
    throw ParseError("unknown format '" + std::string(fmt.text) + "'", fmt.line, fmt.column);
  Token nv = expect("variable count");
  Token nc = expect("clause count");
  const long long n = parse_int(nv, "variable count");
  const long long m = parse_int(nc, "clause count");
  if (n < 1 || n > 10'000'000) throw ParseError("variable count out of range", nv.line, nv.column);
  if (m < 0) throw ParseError("negative clause count", nc.line, nc.column);

  std::vector<Clause> clauses;
  while (auto t = lex.next()) {
    const Token start = *t;
    Clause c;
    bool in_xor = false;
    if (t->text == "x") {
      c.kind = ClauseKind::Xor;
      in_xor = true;
    } else if (t->text == "g") {
      c.kind = ClauseKind::Generalized;
    }
    std::vector<int> seen;
    bool first_token_consumed = c.kind != ClauseKind::Or;
    for (;;) {
      Token lt = *t;
      if (first_token_consumed) {
        auto nt = lex.next();
        if (!nt) throw ParseError("clause not terminated by 0", lex.line(), lex.column());
        lt = *nt;
      }
      first_token_consumed = true;
      if (lt.text == "x" && c.kind == ClauseKind::Generalized && !in_xor) {
        if (c.or_literals.empty()) throw ParseError("generalized clause has an empty disjunctive part", lt.line, lt.column);
        in_xor = true;
        continue;
      }
      const long long v = parse_int(lt, "literal");
      if (v == 0) break;
      const long long var = v < 0 ? -v : v;
      if (var > n)
        throw ParseError("variable " + std::to_string(var) + " exceeds declared count " + std::to_string(n), lt.line,
                         lt.column);
      if (std::find(seen.begin(), seen.end(), static_cast<int>(var)) != seen.end())
        throw ParseError("variable " + std::to_string(var) + " repeated in clause", lt.line, lt.column);
      seen.push_back(static_cast<int>(var));
      (in_xor ? c.xor_literals : c.or_literals).push_back(Literal::from_dimacs(static_cast<int>(v)));
    }
    if (c.size() == 0) throw ParseError("empty clause", start.line, start.column);
    if (c.kind == ClauseKind::Generalized && c.xor_literals.empty())
      throw ParseError("generalized clause has an empty parity part", start.line, start.column);
    clauses.push_back(std::move(c));
  }
  if (static_cast<long long>(clauses.size()) != m)
    throw ParseError("header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()),
                     nc.line, nc.column);
  return Formula(static_cast<int>(n), std::move(clauses));
}

std::string render_formula(const Formula& f) {
  std::ostringstream out;
  out << "p ecnf " << f.num_vars() << ' ' << f.clauses().size() << '\n';
  for (const auto& c : f.clauses()) {
    if (c.kind == ClauseKind::Xor) out << "x ";
    if (c.kind == ClauseKind::Generalized) out << "g ";
    for (const auto& l : c.or_literals) out << l.dimacs() << ' ';
    if (c.kind == ClauseKind::Generalized) out << "x ";
    for (const auto& l : c.xor_literals) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

bool evaluate(const Formula& f, const Assignment& a) {
  if (a.n != f.num_vars())
    throw InputError("assignment has " + std::to_string(a.n) + " coordinates, formula has " +
                     std::to_string(f.num_vars()) + " variables");
  return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) { return c.satisfied_by(a); });
}

Domain models(const Formula& f, int enumeration_cap) {
  if (f.num_vars() > enumeration_cap || f.num_vars() > kMaxPackedArity)
    throw CapExceeded("model enumeration over " + std::to_string(f.num_vars()) + " variables exceeds cap " +
                      std::to_string(enumeration_cap));
  auto packed = pack(f);
  return Domain(f.num_vars(), kernels::enumerate_models(f.num_vars(), packed));
}

Formula rename(const Formula& f, const VarSet& vars) {
  std::vector<char> flip_var(static_cast<std::size_t>(f.num_vars()) + 1, 0);
  for (int v : vars) {
    if (v < 1 || v > f.num_vars()) throw InputError("rename: variable " + std::to_string(v) + " out of range");
    flip_var[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Clause> out = f.clauses();
  for (auto& c : out) {
    for (auto& l : c.or_literals)
      if (flip_var[static_cast<std::size_t>(l.var)]) l.positive = !l.positive;
    for (auto& l : c.xor_literals)
      if (flip_var[static_cast<std::size_t>(l.var)]) l.positive = !l.positive;
  }
  return Formula(f.num_vars(), std::move(out));
}

Assignment flip(const Assignment& a, const VarSet& vars) {
  Assignment r = a;
  for (int v : vars) {
    if (v < 1 || v > a.n) throw InputError("flip: coordinate " + std::to_string(v) + " out of range");
    r.bits ^= coord_bit(a.n, v);
  }
  return r;
}

bool PackedClause::satisfied_by(std::uint64_t bits) const {
  const bool any = ((bits & or_pos) | (~bits & or_neg)) != 0;
  if (kind == ClauseKind::Or) return any;
  const bool parity = ((std::popcount(bits & xor_vars) & 1) != 0) != xor_negations_odd;
  return any || parity;
}

std::vector<PackedClause> pack(const Formula& f) {
  const int n = f.num_vars();
  if (n > kMaxPackedArity) throw InputError("packing needs at most 64 variables");
  std::vector<PackedClause> out;
  out.reserve(f.clauses().size());
  for (const auto& c : f.clauses()) {
    PackedClause p;
    p.kind = c.kind;
    for (const auto& l : c.or_literals) (l.positive ? p.or_pos : p.or_neg) |= coord_bit(n, l.var);
    for (const auto& l : c.xor_literals) {
      p.xor_vars |= coord_bit(n, l.var);
      if (!l.positive) p.xor_negations_odd = !p.xor_negations_odd;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace possdom
