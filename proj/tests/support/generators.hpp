#pragma once

// Random and exhaustive generators shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "epsk/semantics.hpp"
#include "epsk/syntax.hpp"

namespace epsk::testing {

struct Signature {
  std::vector<std::pair<std::string, int>> predicates{{"P", 1}, {"Q", 1}, {"R", 2}, {"C", 0}, {"A", 1}};
  std::vector<std::string> params{"c", "d"};
};

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed, Signature sig = {}) : rng_(seed), sig_(std::move(sig)) {}

  // Random formula of depth <= `depth` whose epsilon-terms nest at most
  // `eps_nesting` deep. Binder hints are drawn from a small pool so that
  // shadowing and hint clashes are common.
  Formula formula(int depth, int eps_nesting = 0);
  Term term(int eps_nesting);
  Sequent sequent(int depth, int eps_nesting = 0, int max_ante = 2, int max_succ = 1);

  std::mt19937_64& rng() { return rng_; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

 private:
  Formula gen(int depth, int eps_nesting, std::vector<std::string>& scope);
  Term gen_term(int eps_nesting, std::vector<std::string>& scope);
  std::string hint();

  std::mt19937_64 rng_;
  Signature sig_;
  int fresh_ = 0;
};

// Binds parameter `var` of `body` as eps-variable with the given hint.
Term eps_over(const std::string& var, const Formula& body, const std::string& hint);

// Every formula of depth <= `depth` over the atoms `atoms` and the
// quantifier-free connectives, plus one quantifier layer over the unary
// predicates `unary` (bound variable in argument position).
std::vector<Formula> enumerate_formulas(int depth, const std::vector<Formula>& atoms,
                                        const std::vector<std::string>& unary = {});

// Random epsilon-free rooted tree model, worlds w0..w(n-1) in preorder.
// With `strict` every world adds at least one element to its parent's.
KripkeModel random_plain_model(FormulaGen& g, int max_worlds, int max_elements, bool strict);

// A validated Term-flavor model tracking `tracked` (atomic or
// implication-with-closed-antecedent bodies), obtained by closing a random
// plain model under the model conditions.
KripkeModel random_term_model(FormulaGen& g, const TermSet& tracked, int max_worlds = 3, int max_elements = 3);

// A validated EpsBot model tracking `tracked`, via extend_with_epsilon.
KripkeModel random_epsbot_model(FormulaGen& g, const TermSet& tracked, int max_worlds = 3, int max_elements = 3);

}  // namespace epsk::testing
