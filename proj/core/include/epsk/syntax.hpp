#pragma once

// Object language: terms with epsilon-terms, formulas, sequents.
//
// Representation is locally nameless. Bound variables are de Bruijn indices
// (counting both quantifier and epsilon binders), free variables and
// constants are named parameters. Binders keep a name hint that is used only
// for printing, so structural equality is alpha-equivalence.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace epsk {

enum class Kind : std::uint8_t {
  // terms
  Bound,
  Param,
  Eps,
  // formulas
  Atom,
  Bot,
  Top,
  And,
  Or,
  Imp,
  Forall,
  Exists,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;  // predicate, parameter, or binder hint
  unsigned index = 0;  // Bound only
  std::vector<NodePtr> children;

  // Cached structural data.
  std::uint64_t hash = 0;  // ignores binder hints
  unsigned loose = 0;      // 1 + largest loose de Bruijn index, 0 if closed
  unsigned eps_inner = 0;  // see Term::eps_rank
  bool has_eps = false;
};

int compare_nodes(const NodePtr& a, const NodePtr& b);

class Formula;

class Term {
 public:
  Term() = default;

  static Term bound(unsigned index);
  static Term param(std::string name);
  // `body` refers to the bound variable as index 0.
  static Term eps(std::string hint, const Formula& body);

  Kind kind() const { return node_->kind; }
  bool is_param() const { return kind() == Kind::Param; }
  bool is_eps() const { return kind() == Kind::Eps; }
  bool is_bound() const { return kind() == Kind::Bound; }
  const std::string& name() const { return node_->name; }
  unsigned index() const { return node_->index; }
  Formula body() const;

  bool closed() const { return node_->loose == 0; }
  bool has_eps() const { return node_->has_eps; }

  // Nesting degree of an epsilon-term. Existential subformulas count as
  // latent epsilon-terms, since the existential antecedent rule turns each
  // of them into one: rank(eps x. P(x)) = 1,
  // rank(eps y. (exists x. P(x) -> P(y))) = 2. Parameters have rank 0.
  unsigned eps_rank() const;

  const NodePtr& node() const { return node_; }
  explicit Term(NodePtr n) : node_(std::move(n)) {}

  friend bool operator==(const Term& a, const Term& b) {
    return compare_nodes(a.node_, b.node_) == 0;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    return compare_nodes(a.node_, b.node_) <=> 0;
  }

 private:
  NodePtr node_;
};

class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula bot();
  static Formula top();
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula imp(const Formula& a, const Formula& b);
  static Formula neg(const Formula& a) { return imp(a, bot()); }
  // `body` refers to the bound variable as index 0.
  static Formula forall(std::string hint, const Formula& body);
  static Formula exists(std::string hint, const Formula& body);
  // Binds every occurrence of parameter `var` in `f`.
  static Formula forall_over(const std::string& var, const Formula& f);
  static Formula exists_over(const std::string& var, const Formula& f);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_quantifier() const { return is(Kind::Forall) || is(Kind::Exists); }
  bool is_negation() const;
  const std::string& name() const { return node_->name; }

  // Atom
  std::vector<Term> args() const;
  std::size_t arity() const { return node_->children.size(); }
  // And / Or / Imp
  Formula left() const { return Formula(node_->children.at(0)); }
  Formula right() const { return Formula(node_->children.at(1)); }
  // Forall / Exists: the body with the bound variable as index 0.
  Formula body() const { return Formula(node_->children.at(0)); }
  // Forall / Exists: the body with the bound variable replaced by `t`.
  Formula instantiate(const Term& t) const;
  // Exists only: eps x. A for exists x. A.
  Term witness() const;

  bool closed() const { return node_->loose == 0; }
  bool has_eps() const { return node_->has_eps; }

  const NodePtr& node() const { return node_; }
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  friend bool operator==(const Formula& a, const Formula& b) {
    return compare_nodes(a.node_, b.node_) == 0;
  }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    return compare_nodes(a.node_, b.node_) <=> 0;
  }

 private:
  NodePtr node_;
};

using FormulaSet = std::set<Formula>;
using TermSet = std::set<Term>;

struct Sequent {
  FormulaSet antecedent;
  FormulaSet succedent;

  Sequent() = default;
  Sequent(FormulaSet a, FormulaSet s)
      : antecedent(std::move(a)), succedent(std::move(s)) {}

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// Capture-avoiding replacement of parameter `x` by the closed term `t`.
Formula substitute(const Formula& a, const std::string& x, const Term& t);
Term substitute(const Term& a, const std::string& x, const Term& t);

// t-down: top for parameters, exists y. (exists x. A(x) -> A(y)) for eps x. A.
Formula definedness_formula(const Term& t);

bool alpha_eq(const Formula& a, const Formula& b);
bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Sequent& a, const Sequent& b);

std::set<std::string> free_params(const Formula& f);
std::set<std::string> free_params(const Term& t);
std::set<std::string> free_params(const Sequent& s);
std::set<std::string> free_params(const FormulaSet& fs);

// Closed epsilon-subterms, including those nested in other epsilon-terms.
void collect_eps_terms(const Formula& f, TermSet& out);
void collect_eps_terms(const Term& t, TermSet& out);
TermSet eps_terms(const Sequent& s);

// Predicate symbols with arities.
std::set<std::pair<std::string, std::size_t>> predicates(const Formula& f);

unsigned formula_depth(const Formula& f);

std::string print(const Term& t);
std::string print(const Formula& f);
std::string print(const Sequent& s);

// A parameter name of the form `<base><n>` not in `used`; `base` itself is
// tried first.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace epsk
