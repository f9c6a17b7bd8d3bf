#include "data.hpp"
#include "doctest.h"
#include "epsk/natded.hpp"
#include "epsk/parser.hpp"

using namespace epsk;
using testing::golden;

namespace {

NJDerivation node(Rule r, const char* s, std::vector<NJDerivation> ps = {}) {
  NJDerivation d;
  d.rule = r;
  d.conclusion = parse_sequent(s);
  d.premises = std::move(ps);
  return d;
}

const CalculusConfig any_cut{Calculus::IPCEps, EpsMode::Augmented, Succedents::Single, CutPolicy::AnyCut};

}  // namespace

TEST_CASE("existential instantiation") {
  NJDerivation d = node(Rule::ExInst, "exists x. P(x) => P(eps x. P(x))", {node(Rule::Assume, "exists x. P(x) => exists x. P(x)")});
  CHECK(check_nj(d, EpsMode::Literal).ok());
  NJDerivation def = node(Rule::ExInst, "exists x. P(x) => def(eps x. P(x))", {node(Rule::Assume, "exists x. P(x) => exists x. P(x)")});
  CHECK(check_nj(def, EpsMode::Augmented).ok());
  CHECK_FALSE(check_nj(def, EpsMode::Literal).ok());
}

TEST_CASE("guarded eliminations and introductions") {
  CHECK(check_nj(golden("pos_nj_guarded_forall").derivation, EpsMode::Augmented).ok());
  CHECK(check_nj(golden("neg_nj_unguarded_forall").derivation, EpsMode::Augmented).has(ViolationCode::MissingDefinednessPremise));
  NJDerivation ex = node(Rule::ExIG, "P(c) => exists x. P(x)", {node(Rule::Assume, "P(c) => P(c)")});
  CHECK(check_nj(ex, EpsMode::Augmented).ok());
}

TEST_CASE("assumption discharge") {
  NJDerivation d = node(Rule::ImpI, "=> A -> A", {node(Rule::Assume, "A => A")});
  CHECK(check_nj(d, EpsMode::Augmented).ok());
  NJDerivation wrong = node(Rule::ImpI, "=> A -> B", {node(Rule::Assume, "A => A")});
  CHECK(check_nj(wrong, EpsMode::Augmented).has(ViolationCode::NJRuleMismatch));
  NJDerivation hidden = node(Rule::ImpI, "=> A -> A", {node(Rule::Assume, "B, A => A")});
  CHECK_FALSE(check_nj(hidden, EpsMode::Augmented).ok());
}

TEST_CASE("disjunction elimination") {
  NJDerivation d = node(Rule::OrE, "A | B => B | A", {
      node(Rule::Assume, "A | B => A | B"),
      node(Rule::OrI2, "A => B | A", {node(Rule::Assume, "A => A")}),
      node(Rule::OrI1, "B => B | A", {node(Rule::Assume, "B => B")})});
  CHECK(check_nj(d, EpsMode::Augmented).ok());
}

TEST_CASE("eigenvariable in natural deduction") {
  CHECK(check_nj(golden("pos_nj_forall_and").derivation, EpsMode::Augmented).ok());
  CHECK(check_nj(golden("neg_nj_eigenvariable").derivation, EpsMode::Augmented).has(ViolationCode::EigenvariableViolation));
}

TEST_CASE("sequent rules are rejected by the natural deduction checker") {
  CHECK(check_nj(node(Rule::Ax, "P => P"), EpsMode::Augmented).has(ViolationCode::NJRuleMismatch));
}

TEST_CASE("natural deduction to sequent calculus reproduces the cut display") {
  NJDerivation n = node(Rule::ExInst, "Q, Q -> exists x. P(x) => P(eps x. P(x))", {
      node(Rule::ImpE, "Q, Q -> exists x. P(x) => exists x. P(x)",
           {node(Rule::Assume, "Q -> exists x. P(x) => Q -> exists x. P(x)"), node(Rule::Assume, "Q => Q")})});
  REQUIRE(check_nj(n, EpsMode::Literal).ok());
  Derivation s = nj_to_seq(n, EpsMode::Literal);
  CHECK(check_derivation(s, {Calculus::IPCEps, EpsMode::Literal, Succedents::Single, CutPolicy::AnyCut}).ok());
  CHECK(alpha_eq(s.conclusion, n.conclusion));
  // the instantiation became a cut on the existential against the epsilon rule
  REQUIRE(s.rule == Rule::Cut);
  CHECK(*s.cut_formula == parse_formula("exists x. P(x)"));
  CHECK(s.premises[1].rule == Rule::ExLEps);
  CHECK(alpha_eq(s.premises[1].conclusion, parse_sequent("exists x. P(x) => P(eps x. P(x))")));
}

TEST_CASE("sequent calculus to natural deduction reproduces the discharge display") {
  Derivation s = golden("pos_critical_axiom").derivation;
  NJDerivation n = seq_to_nj(s, EpsMode::Augmented);
  CHECK(check_nj(n, EpsMode::Augmented).ok());
  CHECK(alpha_eq(n.conclusion, s.conclusion));

  // an antecedent existential is used by discharging F(e) against ExInst
  Derivation left = golden("pos_ipce_exists_imp").derivation;
  NJDerivation m = seq_to_nj(left, EpsMode::Augmented);
  CHECK(check_nj(m, EpsMode::Augmented).ok());
  bool found = false;
  std::function<void(const NJDerivation&)> walk = [&](const NJDerivation& d) {
    if (d.rule == Rule::ImpE && d.premises.size() == 2 && d.premises[0].rule == Rule::ImpI && d.premises[1].rule == Rule::ExInst)
      found = true;
    for (const auto& p : d.premises) walk(p);
  };
  walk(m);
  CHECK(found);
}

TEST_CASE("translations round trip over the golden derivations") {
  for (const auto& f : testing::golden_files("pos_")) {
    DerivationDocument doc = read_derivation(read_file(f));
    CAPTURE(f);
    CalculusConfig c = doc.config();
    if (c.calculus == Calculus::IPC) continue;
    if (is_nj_rule(doc.derivation.rule)) {
      Derivation s = nj_to_seq(doc.derivation, c.eps_mode);
      CHECK(check_derivation(s, {Calculus::IPCEps, c.eps_mode, Succedents::Single, CutPolicy::AnyCut}).ok());
      CHECK(check_nj(seq_to_nj(s, c.eps_mode), c.eps_mode).ok());
    } else if (c.succedents == Succedents::Single) {
      NJDerivation n = seq_to_nj(doc.derivation, c.eps_mode);
      CHECK(check_nj(n, c.eps_mode).ok());
      CHECK(alpha_eq(n.conclusion, doc.derivation.conclusion));
      CHECK(check_derivation(nj_to_seq(n, c.eps_mode), {Calculus::IPCEps, c.eps_mode, Succedents::Single, CutPolicy::AnyCut}).ok());
    }
  }
}

TEST_CASE("translations refuse unchecked input") {
  CHECK_THROWS_AS(nj_to_seq(golden("neg_nj_unguarded_forall").derivation, EpsMode::Augmented), TranslationError);
  CHECK_THROWS_AS(seq_to_nj(golden("neg_bad_axiom").derivation, EpsMode::Augmented), TranslationError);
}
