#include "doctest.h"
#include "epsk/parser.hpp"
#include "epsk/search.hpp"
#include "generators.hpp"

using namespace epsk;

namespace {

Sequent S(const char* s) { return parse_sequent(s); }

SearchConfig ipc() {
  SearchConfig c;
  c.calculus = Calculus::IPC;
  return c;
}

void audit(const Sequent& s, const SearchResult& r) {
  REQUIRE(r.verdict == Verdict::Countermodel);
  REQUIRE(r.model);
  CHECK(validate_model(*r.model).ok());
  Evaluator ev(*r.model);
  CHECK(r.refuting_world >= 0);
  for (const auto& a : s.antecedent) CHECK(ev.forces(r.refuting_world, a));
  for (const auto& b : s.succedent) CHECK_FALSE(ev.forces(r.refuting_world, b));
}

void proved(const Sequent& s, const SearchResult& r, const SearchConfig& cfg) {
  REQUIRE(r.verdict == Verdict::Proof);
  REQUIRE(r.proof);
  CHECK(alpha_eq(r.proof->conclusion, s));
  CHECK(check_derivation(*r.proof, proof_config(cfg)).ok());
}

}  // namespace

TEST_CASE("simple proofs") {
  for (const char* s : {"=> P(c) -> P(c)", "A & B => B & A", "forall x. P(x) => exists x. P(x)",
                        "exists x. forall y. R(x, y) => forall y. exists x. R(x, y)",
                        "=> (exists x. (C -> A(x))) -> C -> exists x. A(x)"}) {
    CAPTURE(s);
    SearchConfig cfg;
    proved(S(s), decide(S(s), cfg), cfg);
    proved(S(s), decide(S(s), ipc()), ipc());
  }
}

TEST_CASE("classical principles are refuted") {
  for (const char* s : {"=> P | ~P", "=> ~~P(c) -> P(c)", "=> ((A -> B) -> A) -> A",
                        "=> (C -> exists x. A(x)) -> exists x. (C -> A(x))"}) {
    CAPTURE(s);
    audit(S(s), decide(S(s)));
    audit(S(s), decide(S(s), ipc()));
  }
}

TEST_CASE("epsilon-specific verdicts") {
  Sequent crit = S("=> P(eps x. P(x)) -> exists x. P(x)");
  audit(crit, decide(crit));
  Sequent def = S("exists x. P(x) => def(eps x. P(x))");
  SearchConfig cfg;
  SearchResult r = decide(def, cfg);
  proved(def, r, cfg);
  CHECK(r.proof->size() == 2);

  SearchConfig lit;
  lit.eps_mode = EpsMode::Literal;
  CHECK(decide(def, lit).verdict != Verdict::Proof);
}

TEST_CASE("epsilon-terms are not IPC input") {
  SearchResult r = decide(S("=> P(eps x. P(x))"), ipc());
  CHECK(r.verdict == Verdict::Exhausted);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("budgets end the search") {
  SearchConfig tiny;
  tiny.world_budget = 1;
  CHECK(decide(S("=> ~~P(c) -> P(c)"), tiny).verdict == Verdict::Exhausted);
  SearchConfig steps;
  steps.step_budget = 3;
  CHECK(decide(S("=> (A -> B) -> (B -> C) -> A -> C"), steps).verdict == Verdict::Exhausted);
}

TEST_CASE("scaled bounds") {
  SearchConfig c = SearchConfig{}.scaled(2);
  CHECK(c.instantiation_depth == 6);
  CHECK(c.eps_nesting == 4);
  CHECK(c.world_budget == 16);
  CHECK(c.formula_budget == 128);
}

TEST_CASE("saturation") {
  SaturationResult r = saturate(S("A & B, C | D => E"));
  REQUIRE(r.kind == SaturationResult::Open);
  CHECK(r.sequent->antecedent.count(parse_formula("A")));
  CHECK(invertible_closure_violations(*r.sequent).empty());
  CHECK(saturate(S("A & B => A")).kind == SaturationResult::Closed);
}

TEST_CASE("closure clauses catch unsaturated sequents") {
  SaturatedSequent s;
  s.antecedent = {parse_formula("A & B")};
  CHECK_FALSE(invertible_closure_violations(s).empty());
  s.antecedent.insert(parse_formula("A"));
  s.antecedent.insert(parse_formula("B"));
  CHECK(invertible_closure_violations(s).empty());
  s.succedent = {parse_formula("A")};
  CHECK_FALSE(invertible_closure_violations(s).empty());
}

TEST_CASE("countermodel construction from an open tree") {
  OpenWorld root;
  root.sequent.succedent = {parse_formula("P(c)")};
  root.sequent.domain = {Term::param("c")};
  std::string why;
  auto m = build_countermodel(root, Calculus::IPCEps, &why);
  REQUIRE(m);
  CHECK(m->size() == 1);
  CHECK_FALSE(forces(*m, 0, parse_formula("P(c)")));
  // an open sequent that lies about an atom cannot be modelled
  OpenWorld bad;
  bad.sequent.antecedent = {parse_formula("P(c) | Q(c)")};
  bad.sequent.domain = {Term::param("c")};
  CHECK_FALSE(build_countermodel(bad, Calculus::IPCEps, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("random sequents: verdicts are certified") {
  testing::FormulaGen g(5);
  int decided = 0;
  for (int i = 0; i < 40; ++i) {
    Sequent s = g.sequent(2, 1);
    CAPTURE(print(s));
    SearchConfig cfg;
    SearchResult r = decide(s, cfg);
    if (r.verdict == Verdict::Proof) proved(s, r, cfg), ++decided;
    if (r.verdict == Verdict::Countermodel) audit(s, r), ++decided;
  }
  CHECK(decided > 20);
}
