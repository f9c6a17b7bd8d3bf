#include "epsk/parser.hpp"

#include <cctype>
#include <vector>

namespace epsk {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, And, Or, Arrow, Not, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Not: return "'~'";
    case Tok::Turnstile: return "'=>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Utf8Alias {
  std::string_view bytes;
  Tok kind;
  const char* ident;
};

const Utf8Alias kAliases[] = {
    {"\xE2\x88\xA7", Tok::And, ""},         {"\xE2\x88\xA8", Tok::Or, ""},
    {"\xE2\x86\x92", Tok::Arrow, ""},       {"\xC2\xAC", Tok::Not, ""},
    {"\xE2\x87\x92", Tok::Turnstile, ""},   {"\xE2\x88\x80", Tok::Ident, "forall"},
    {"\xE2\x88\x83", Tok::Ident, "exists"}, {"\xCE\xB5", Tok::Ident, "eps"},
    {"\xE2\x8A\xA5", Tok::Ident, "bot"},    {"\xE2\x8A\xA4", Tok::Ident, "top"},
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(s.substr(i, n)), l, cl});
      advance(n);
    };
    switch (c) {
      case '(': single(Tok::LParen, 1); continue;
      case ')': single(Tok::RParen, 1); continue;
      case ',': single(Tok::Comma, 1); continue;
      case '.': single(Tok::Dot, 1); continue;
      case '&': single(Tok::And, 1); continue;
      case '|': single(Tok::Or, 1); continue;
      case '~': single(Tok::Not, 1); continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") {
      single(Tok::Arrow, 2);
      continue;
    }
    if (s.substr(i, 2) == "=>") {
      single(Tok::Turnstile, 2);
      continue;
    }
    bool matched = false;
    for (const auto& a : kAliases) {
      if (s.substr(i, a.bytes.size()) == a.bytes) {
        out.push_back({a.kind, a.kind == Tok::Ident ? a.ident : std::string(a.bytes), l, cl});
        i += a.bytes.size();
        ++col;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "eps" || s == "bot" || s == "top" || s == "def";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula formula() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) return quantifier();
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return Formula::imp(lhs, formula());
    }
    return lhs;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected term");
    if (t.text == "eps") {
      next();
      std::string var = variable();
      expect(Tok::Dot);
      scope_.push_back(var);
      Formula body = formula();
      scope_.pop_back();
      return Term::eps(var, body);
    }
    if (is_keyword(t.text)) fail(t, "keyword '" + t.text + "' cannot be a term");
    if (std::isupper(static_cast<unsigned char>(t.text[0])))
      fail(t, "expected term, found predicate '" + t.text + "'");
    std::string name = next().text;
    for (std::size_t k = scope_.size(); k-- > 0;)
      if (scope_[k] == name) return Term::bound(static_cast<unsigned>(scope_.size() - 1 - k));
    return Term::param(name);
  }

  Sequent sequent() {
    Sequent s;
    if (peek().kind != Tok::Turnstile) s.antecedent = formula_list();
    expect(Tok::Turnstile);
    if (peek().kind != Tok::End) s.succedent = formula_list();
    return s;
  }

  void finish() {
    if (peek().kind != Tok::End) fail(peek(), "expected end of input");
  }

 private:
  FormulaSet formula_list() {
    FormulaSet out;
    out.insert(formula());
    while (peek().kind == Tok::Comma) {
      next();
      out.insert(formula());
    }
    return out;
  }

  Formula quantifier() {
    bool all = next().text == "forall";
    std::string var = variable();
    expect(Tok::Dot);
    scope_.push_back(var);
    Formula body = formula();
    scope_.pop_back();
    return all ? Formula::forall(var, body) : Formula::exists(var, body);
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return Formula::neg(unary());
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident:
        break;
      default:
        fail(t, std::string("expected formula, found ") + describe(t.kind));
    }
    if (t.text == "forall" || t.text == "exists") return quantifier();
    if (t.text == "bot") {
      next();
      return Formula::bot();
    }
    if (t.text == "top") {
      next();
      return Formula::top();
    }
    if (t.text == "def") {
      next();
      expect(Tok::LParen);
      Term arg = term();
      expect(Tok::RParen);
      if (!arg.closed()) fail(t, "def() needs a closed term");
      return definedness_formula(arg);
    }
    if (!std::isupper(static_cast<unsigned char>(t.text[0])))
      fail(t, "expected formula, found term '" + t.text + "' (predicates are capitalized)");
    std::string pred = next().text;
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) {
      next();
      args.push_back(term());
      while (peek().kind == Tok::Comma) {
        next();
        args.push_back(term());
      }
      expect(Tok::RParen);
    }
    return Formula::atom(pred, std::move(args));
  }

  std::string variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text) ||
        std::isupper(static_cast<unsigned char>(t.text[0])))
      fail(t, "expected variable name");
    return next().text;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  void expect(Tok k) {
    if (peek().kind != k)
      fail(peek(), std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
    next();
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.finish();
  return f;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(text);
  Sequent s = p.sequent();
  p.finish();
  return s;
}

}  // namespace epsk
