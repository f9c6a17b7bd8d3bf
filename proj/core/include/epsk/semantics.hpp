#pragma once

// Finite Kripke models for the epsilon calculus, in two flavors:
//   Term   - elements are closed terms and every epsilon-term denotes itself;
//   EpsBot - elements are parameters and epsilon-terms are valued per world,
//            possibly outside the world's domain when undefined there.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsk/syntax.hpp"

namespace epsk {

enum class Flavor { Term, EpsBot };

const char* flavor_name(Flavor f);

struct KripkeModel {
  Flavor flavor = Flavor::EpsBot;
  std::vector<std::string> worlds;
  // le[i][j]: world i is below or equal to world j. Reflexive and transitive
  // after set_order.
  std::vector<std::vector<bool>> le;
  std::vector<TermSet> domains;
  std::vector<FormulaSet> atoms;
  // EpsBot only: values of epsilon-terms whose closed epsilon-subterms have
  // already been replaced by elements.
  std::vector<std::map<Term, Term>> valuation;
  TermSet tracked;
  // The enumeration order of elements used by the constructions. Elements
  // missing here come after, in domain order.
  std::vector<Term> element_order;

  std::size_t size() const { return worlds.size(); }
  int world_index(const std::string& name) const;  // -1 if absent
  int add_world(std::string name, TermSet domain = {}, FormulaSet atoms = {});
  // Reflexive-transitive closure of the given strict pairs.
  void set_order(const std::vector<std::pair<int, int>>& pairs);
  bool below(int a, int b) const { return le[a][b]; }
  bool strictly_below(int a, int b) const { return a != b && le[a][b]; }
  // Worlds immediately above w.
  std::vector<int> successors(int w) const;
  TermSet all_elements() const;
  std::vector<Term> ordered_elements() const;
};

class UnTrackedEpsilonTerm : public std::runtime_error {
 public:
  explicit UnTrackedEpsilonTerm(const std::string& term)
      : std::runtime_error("epsilon-term without a value: " + term) {}
};

// Forcing with a per-instance cache. The model must outlive the evaluator
// and must not change while it is in use, except through the resolver.
class Evaluator {
 public:
  // Called for an EpsBot valuation key missing at a world; returns the
  // value to record, or nothing to raise UnTrackedEpsilonTerm.
  using Resolver = std::function<std::optional<Term>(const Term& key, int world)>;

  explicit Evaluator(const KripkeModel& m, Resolver resolver = {});

  bool forces(int w, const Formula& a);
  bool defined_at(int w, const Term& t);
  // V(t, w): closed epsilon-subterms evaluated innermost first.
  Term value(int w, const Term& t);
  // The EpsBot valuation key of t at w (t with closed epsilon-subterms
  // replaced by their values).
  Term key(int w, const Term& t);
  bool sequent_valid(const Sequent& s);
  // Worlds where every antecedent formula is forced and no succedent one.
  std::vector<int> refuting_worlds(const Sequent& s);

  // Values produced by the resolver, by world and key.
  const std::map<std::pair<int, Term>, Term>& resolved() const { return resolved_; }

 private:
  bool atom(int w, const Formula& a);

  const KripkeModel& m_;
  Resolver resolver_;
  std::map<std::pair<int, Formula>, bool> cache_;
  std::map<std::pair<int, Term>, Term> resolved_;
};

bool forces(const KripkeModel& m, int w, const Formula& a);
bool defined_at(const KripkeModel& m, int w, const Term& t);
// Checked at every world whose domain contains the free parameters of s.
bool sequent_valid(const KripkeModel& m, const Sequent& s);

enum class ModelIssue {
  OrderNotStrict,
  EmptyDomain,
  DomainNotMonotone,
  MonotonicityViolation,
  UndefinedElementViolation,
  TrackedNotClosed,
  MissingValuation,
  DefinedValueOutsideDomain,
  UndefinedValueInDomain,
  ValueNotStable,
  EpsInsideViolation,
  CriticalConditionViolation,
  ValueNotElement,
};

const char* issue_name(ModelIssue i);

struct ModelProblem {
  ModelIssue issue;
  std::string world;
  std::string detail;
};

struct ValidationReport {
  std::vector<ModelProblem> problems;

  bool ok() const { return problems.empty(); }
  bool has(ModelIssue i) const;
};

struct ValidationOptions {
  bool critical_condition = true;
};

// Never throws; missing values are reported as MissingValuation.
ValidationReport validate_model(const KripkeModel& m, const ValidationOptions& opts = {});

// Closure of a set of epsilon-terms under their closed epsilon-subterms.
TermSet close_tracked(const TermSet& ts);

enum class Precondition { NoTree, DomainsNotStrict, NoUndefinedSlot, EmptyRootDomain };

const char* precondition_name(Precondition p);

class PreconditionViolation : public std::runtime_error {
 public:
  PreconditionViolation(Precondition p, const std::string& msg)
      : std::runtime_error(std::string(precondition_name(p)) + ": " + msg), reason(p) {}
  Precondition reason;
};

// Index of the root if the order is a finite tree, nothing otherwise.
std::optional<int> tree_root(const KripkeModel& m);

// Values every tracked term of an epsilon-free model, with the element
// order of the model as the choice order. The result is an EpsBot model.
KripkeModel extend_with_epsilon(const KripkeModel& m0, const TermSet& tracked);

// Adds a fresh copy of the first root element to each world and everything
// above it, so that domains grow strictly. Copies satisfy exactly the atoms
// of the original element. Epsilon-free input only.
KripkeModel strictify_domains(const KripkeModel& m0);

}  // namespace epsk
