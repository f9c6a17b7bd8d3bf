#pragma once

// Bounded proof and countermodel search. Saturation approximates maximal
// consistent sequents, branching on succedent implications and universals
// spawns successor worlds. Nothing the search returns is trusted: proofs are
// rechecked by the kernel and countermodels by the evaluator.

#include <optional>
#include <string>
#include <vector>

#include "epsk/kernel.hpp"
#include "epsk/semantics.hpp"

namespace epsk {

struct SearchConfig {
  Calculus calculus = Calculus::IPCEps;
  EpsMode eps_mode = EpsMode::Augmented;
  CutPolicy cut_policy = CutPolicy::DefinednessCutsOnly;
  int instantiation_depth = 3;  // instances per quantified formula and world
  int eps_nesting = 2;          // max rank of epsilon-terms that are decided or made defined
  int world_budget = 8;         // max length of a chain of worlds
  int formula_budget = 64;      // max formulas in one sequent
  long step_budget = 200000;    // max rule applications overall

  // Every bound multiplied by k.
  SearchConfig scaled(int k) const;
};

struct SaturatedSequent {
  FormulaSet antecedent;
  FormulaSet succedent;
  TermSet domain;
  // Quantified formulas whose instances were cut short by
  // instantiation_depth.
  FormulaSet exempt;
};

// Clauses of invertible closure that `s` fails, e.g.
// "A & B in antecedent but B is not". Exempt formulas are skipped.
std::vector<std::string> invertible_closure_violations(const SaturatedSequent& s);

struct SaturationResult {
  enum Kind { Closed, Open, Exhausted } kind = Exhausted;
  std::optional<Derivation> proof;  // Closed
  std::optional<SaturatedSequent> sequent;  // Open: the first open branch
  std::string diagnostic;
};

// Invertible rules and definedness decisions only.
SaturationResult saturate(const Sequent& s, const SearchConfig& cfg = {});

enum class Verdict { Proof, Countermodel, Exhausted };

const char* verdict_name(Verdict v);

struct SearchResult {
  Verdict verdict = Verdict::Exhausted;
  std::optional<Derivation> proof;        // checked in multiple-succedent mode
  std::optional<KripkeModel> model;       // Term flavor
  int refuting_world = -1;
  std::vector<SaturatedSequent> worlds;   // the open tree behind the model
  std::string diagnostic;
  long steps = 0;
};

// The kernel configuration search proofs are checked under.
CalculusConfig proof_config(const SearchConfig& cfg);

SearchResult decide(const Sequent& s, const SearchConfig& cfg = {});

struct OpenWorld {
  SaturatedSequent sequent;
  std::vector<OpenWorld> children;
};

// Term model of an open tree: worlds in preorder, ordered by the tree,
// atoms read off antecedents. The audit checks validate_model, that every
// antecedent formula is forced and no succedent formula is. Returns the
// model, or nothing with `why` set.
std::optional<KripkeModel> build_countermodel(const OpenWorld& root, Calculus calculus = Calculus::IPCEps,
                                              std::string* why = nullptr);

}  // namespace epsk
