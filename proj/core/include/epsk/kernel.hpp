#pragma once

// Trusted checker for sequent derivations of IPC and of its epsilon
// extension, plus recognition and derivation of the Hilbert-style epsilon
// axioms.

#include <optional>
#include <string>
#include <vector>

#include "epsk/syntax.hpp"

namespace epsk {

enum class Calculus { IPC, IPCEps };
enum class EpsMode { Literal, Augmented };
enum class Succedents { Single, Multiple };
enum class CutPolicy { AnyCut, DefinednessCutsOnly, NoCut };

struct CalculusConfig {
  Calculus calculus = Calculus::IPCEps;
  EpsMode eps_mode = EpsMode::Augmented;
  Succedents succedents = Succedents::Single;
  CutPolicy cut_policy = CutPolicy::DefinednessCutsOnly;
};

enum class Rule {
  // sequent calculus
  Ax, AxBot, AxTop, AndR, AndL, OrL, OrR1, OrR2, ImpL, ImpR, AllR, AllL, ExR, ExLEps, ExL, Cut,
  // natural deduction
  Assume, AndI, AndE1, AndE2, OrI1, OrI2, OrE, ImpI, ImpE, BotE, TopI, AllI, AllEG, ExIG, ExInst,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);
bool is_nj_rule(Rule r);

// A proof tree. The same shape carries sequent-calculus and natural
// deduction derivations; the rule tags tell them apart.
struct Derivation {
  Sequent conclusion;
  Rule rule = Rule::Ax;
  std::vector<Derivation> premises;
  std::optional<Term> witness;        // AllL, ExR, AllEG, ExIG
  std::optional<std::string> eigen;   // AllR, ExL, AllI
  std::optional<Formula> cut_formula; // Cut

  std::size_t size() const;
};

using NJDerivation = Derivation;

enum class ViolationCode {
  MissingDefinednessPremise,
  EigenvariableViolation,
  CutPolicyViolation,
  RuleMismatch,
  EpsilonTermInIPC,
  NJRuleMismatch,
};

const char* code_name(ViolationCode c);

struct Violation {
  std::string path;  // "r" is the root, "r.1.0" the first premise of its second premise
  ViolationCode code;
  std::string detail;
};

struct CheckReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationCode c) const;
};

CheckReport check_derivation(const Derivation& d, const CalculusConfig& cfg);

// In single-succedent mode an empty succedent stands for bot.
Sequent single_goal_form(const Sequent& s);

enum class HilbertSchema { EpsQ1, EpsQ2, Critical, None };

const char* schema_name(HilbertSchema s);

// `quantified` is the forall (EpsQ1) or exists (EpsQ2, Critical) formula of
// the schema; `term` the instantiated term (the epsilon-term itself for
// Critical).
struct HilbertInstance {
  HilbertSchema schema = HilbertSchema::None;
  Formula quantified;
  Term term;
};

HilbertInstance recognize_hilbert_axiom(const Formula& f);

// The axiom formula of an instance.
Formula hilbert_axiom(const HilbertInstance& inst);

class InvalidInstantiation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A derivation of `=> hilbert_axiom(inst)` accepted under IPCEps,
// Augmented, AnyCut.
Derivation hilbert_axiom_derivation(const HilbertInstance& inst);

}  // namespace epsk
