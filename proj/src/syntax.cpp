#include "addrand/syntax.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace addrand {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

enum class Symbol { P, Pr, SF };

struct PredClause {
  Symbol symbol;
  PredicateAtom atom;
};

using Clause = std::variant<PredClause, CongruenceAtom, EqualityAtom>;

class Parser {
 public:
  Parser(std::string_view text, bool mixed) : text_(text), mixed_(mixed) {}

  std::vector<Clause> parse() {
    std::vector<Clause> out;
    skip_ws();
    if (peek_identifier() == "true") {
      pos_ += 4;
      skip_ws();
      if (!at_end()) fail("unexpected input after 'true'");
      return out;
    }
    out.push_back(clause());
    skip_ws();
    while (!at_end()) {
      expect('&');
      out.push_back(clause());
      skip_ws();
    }
    return out;
  }

 private:
  std::string_view text_;
  bool mixed_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return at_end() ? '\0' : text_[pos_];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view peek_identifier() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    return text_.substr(pos_, end - pos_);
  }

  // Magnitude of a digit string; 2^63 is allowed so that a leading minus can
  // still reach the minimum value.
  std::uint64_t nat() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
    constexpr std::uint64_t limit = std::uint64_t{1} << 63;
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (limit - d) / 10) fail("integer literal out of range");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Int signed_value(std::uint64_t magnitude, bool negative) {
    if (!negative) {
      if (magnitude > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))
        fail("integer literal out of range");
      return static_cast<Int>(magnitude);
    }
    if (magnitude == (std::uint64_t{1} << 63)) return std::numeric_limits<Int>::min();
    return -static_cast<Int>(magnitude);
  }

  Int integer() {
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    return signed_value(nat(), negative);
  }

  Int positive_nat(const char* what) {
    std::size_t at = (skip_ws(), pos_);
    Int v = signed_value(nat(), false);
    if (v < 1) throw ParseError(at, std::string(what) + " must be positive");
    return v;
  }

  void expect_variable() {
    std::size_t at = (skip_ws(), pos_);
    auto id = peek_identifier();
    if (id.empty()) fail("expected the variable x");
    if (id != "x") throw ParseError(at, "unknown variable '" + std::string(id) + "' (only x is allowed)");
    pos_ += id.size();
  }

  Term term() {
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int n = signed_value(nat(), negative);
      bool star = false;
      if (peek() == '*') {
        star = true;
        ++pos_;
      }
      if (!star && peek_identifier().empty()) return {0, n};
      expect_variable();
      return {n, offset()};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      expect_variable();
      return {negative ? Int{-1} : Int{1}, offset()};
    }
    fail("expected a term");
  }

  Int offset() {
    char c = peek();
    if (c != '+' && c != '-') return 0;
    ++pos_;
    return signed_value(nat(), c == '-');
  }

  Clause clause() {
    std::size_t start = (skip_ws(), pos_);
    bool negated = false;
    if (peek() == '!') {
      negated = true;
      ++pos_;
    }
    auto id = peek_identifier();
    if (id == "P" || id == "Pr" || id == "SF") {
      Symbol sym = id == "P" ? Symbol::P : id == "Pr" ? Symbol::Pr : Symbol::SF;
      if (mixed_ && sym == Symbol::P)
        throw ParseError(pos_, "mixed conjunctions use the symbols Pr and SF");
      if (!mixed_ && sym != Symbol::P)
        throw MixedPredicateError(pos_, "symbol '" + std::string(id) +
                                            "' belongs to mixed prime/square-free conjunctions");
      pos_ += id.size();
      Int index = 1;
      if (sym == Symbol::P && !at_end() && text_[pos_] == '_') {
        ++pos_;
        index = positive_nat("predicate index");
      }
      expect('(');
      Term t = term();
      expect(')');
      return PredClause{sym, {canonical(t), index, !negated}};
    }
    if (negated) fail("'!' must be followed by a predicate atom");
    if (mixed_) throw ParseError(start, "mixed conjunctions admit predicate atoms only");
    Term t = term();
    expect('=');
    Int rhs = integer();
    if (peek_identifier() == "mod") {
      pos_ += 3;
      Int modulus = positive_nat("modulus");
      return CongruenceAtom{t.coeff, t.constant, modulus, floor_mod(rhs, modulus)};
    }
    return EqualityAtom{t.coeff, t.constant, rhs};
  }
};

}  // namespace

BasicFormula parse_formula(std::string_view text) {
  BasicFormula out;
  for (auto& c : Parser(text, false).parse()) {
    if (auto* p = std::get_if<PredClause>(&c)) out.atoms.push_back(p->atom);
    else if (auto* k = std::get_if<CongruenceAtom>(&c)) out.congruences.push_back(*k);
    else out.equalities.push_back(std::get<EqualityAtom>(c));
  }
  return out;
}

PrimaryFormula parse_primary(std::string_view text) {
  auto f = parse_formula(text);
  auto p = as_primary(f);
  if (!p) throw ParseError(0, "expected a primary formula (plain P atoms, no congruences)");
  return *p;
}

MixedConjunction parse_mixed(std::string_view text) {
  MixedConjunction out;
  for (auto& c : Parser(text, true).parse()) {
    const auto& p = std::get<PredClause>(c);
    if (p.symbol == Symbol::Pr)
      (p.atom.positive ? out.pos_pr : out.neg_pr).push_back(p.atom.term);
    else
      (p.atom.positive ? out.pos_sf : out.neg_sf).push_back(p.atom.term);
  }
  return out;
}

std::string render(const Term& t) {
  if (t.coeff == 0) return std::to_string(t.constant);
  std::string s;
  if (t.coeff == 1) s = "x";
  else if (t.coeff == -1) s = "-x";
  else s = std::to_string(t.coeff) + "x";
  if (t.constant > 0) s += "+" + std::to_string(t.constant);
  else if (t.constant < 0) s += std::to_string(t.constant);
  return s;
}

std::string render(const PredicateAtom& a) {
  std::string s = a.positive ? "" : "!";
  s += a.index == 1 ? "P" : "P_" + std::to_string(a.index);
  return s + "(" + render(a.term) + ")";
}

std::string render(const CongruenceAtom& c) {
  return render(Term{c.coeff, c.constant}) + " = " + std::to_string(c.residue) + " mod " +
         std::to_string(c.modulus);
}

std::string render(const EqualityAtom& e) {
  return render(Term{e.coeff, e.constant}) + " = " + std::to_string(e.value);
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  if (parts.empty()) return "true";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += " & " + parts[i];
  return s;
}

void add_terms(std::vector<std::string>& out, const std::vector<Term>& terms, const char* prefix) {
  for (const auto& t : terms) out.push_back(prefix + ("(" + render(t) + ")"));
}

}  // namespace

std::string render(const BasicFormula& f) {
  std::vector<std::string> parts;
  for (const auto& a : f.atoms) parts.push_back(render(a));
  for (const auto& c : f.congruences) parts.push_back(render(c));
  for (const auto& e : f.equalities) parts.push_back(render(e));
  return join(parts);
}

std::string render(const PrimaryFormula& f) {
  std::vector<std::string> parts;
  add_terms(parts, f.positive, "P");
  add_terms(parts, f.negative, "!P");
  return join(parts);
}

std::string render(const MixedConjunction& f) {
  std::vector<std::string> parts;
  add_terms(parts, f.pos_pr, "Pr");
  add_terms(parts, f.neg_pr, "!Pr");
  add_terms(parts, f.pos_sf, "SF");
  add_terms(parts, f.neg_sf, "!SF");
  return join(parts);
}

}  // namespace addrand
