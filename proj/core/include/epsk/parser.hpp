#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "epsk/syntax.hpp"

namespace epsk {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Grammar (ASCII; the usual Unicode connectives are accepted as well):
//   formula := ('forall' | 'exists') ident '.' formula | imp
//   imp     := or ('->' formula)?
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | 'bot' | 'top' | Pred ('(' term, ... ')')? | '(' formula ')'
//            | 'def' '(' term ')' | quantifier
//   term    := ident | 'eps' ident '.' formula
//   sequent := formula, ... '=>' formula, ...
// Identifiers starting with an uppercase letter are predicates. Lowercase
// identifiers not bound by an enclosing binder are parameters.
// `def(t)` abbreviates definedness_formula(t).
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);
Sequent parse_sequent(std::string_view text);

}  // namespace epsk
