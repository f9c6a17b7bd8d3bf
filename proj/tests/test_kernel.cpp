#include "data.hpp"
#include "doctest.h"
#include "epsk/kernel.hpp"
#include "epsk/parser.hpp"

using namespace epsk;
using testing::golden;

namespace {

Derivation node(Rule r, const char* s, std::vector<Derivation> ps = {}) {
  Derivation d;
  d.rule = r;
  d.conclusion = parse_sequent(s);
  d.premises = std::move(ps);
  return d;
}

CalculusConfig cfg(EpsMode m = EpsMode::Augmented, CutPolicy p = CutPolicy::DefinednessCutsOnly,
                   Succedents s = Succedents::Single, Calculus c = Calculus::IPCEps) {
  return {c, m, s, p};
}

// The two-node derivation of exists x. P(x) => def(eps x. P(x)).
Derivation exists_defined() {
  return node(Rule::ExLEps, "exists x. P(x) => def(eps x. P(x))",
              {node(Rule::Ax, "P(eps x. P(x)), def(eps x. P(x)) => def(eps x. P(x))")});
}

}  // namespace

TEST_CASE("epsilon antecedent rule") {
  Derivation d = node(Rule::ExLEps, "exists x. P(x) => P(eps x. P(x))", {node(Rule::Ax, "P(eps x. P(x)) => P(eps x. P(x))")});
  CHECK(check_derivation(d, cfg(EpsMode::Literal)).ok());
  CHECK(check_derivation(d, cfg()).ok());
}

TEST_CASE("definedness from an existential depends on the mode") {
  CHECK(check_derivation(exists_defined(), cfg()).ok());
  CheckReport r = check_derivation(exists_defined(), cfg(EpsMode::Literal));
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].code == ViolationCode::RuleMismatch);
  CHECK(r.violations[0].path == "r");
}

TEST_CASE("guarded existential introduction") {
  Derivation unguarded = golden("neg_exi_without_definedness").derivation;
  CheckReport r = check_derivation(unguarded, cfg(EpsMode::Augmented, CutPolicy::NoCut));
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].code == ViolationCode::MissingDefinednessPremise);
  CHECK(r.violations[0].path == "r.0");

  // witness a parameter: the guard may be omitted
  Derivation d = node(Rule::ExR, "P(c) => exists x. P(x)", {node(Rule::Ax, "P(c) => P(c)")});
  CHECK(check_derivation(d, cfg()).ok());
  // and in IPC no guard is ever needed
  CHECK(check_derivation(d, cfg(EpsMode::Augmented, CutPolicy::NoCut, Succedents::Single, Calculus::IPC)).ok());
}

TEST_CASE("eigenvariable condition") {
  Derivation bad = node(Rule::AllR, "P(a) => forall x. P(x)", {node(Rule::Ax, "P(a) => P(a)")});
  bad.eigen = "a";
  CHECK(check_derivation(bad, cfg()).has(ViolationCode::EigenvariableViolation));
  Derivation good = node(Rule::AllR, "forall x. P(x) => forall x. P(x)",
                         {node(Rule::AllL, "forall x. P(x) => P(a)", {node(Rule::Ax, "P(a) => P(a)")})});
  good.eigen = "a";
  good.premises[0].witness = Term::param("a");
  CHECK(check_derivation(good, cfg()).ok());
  // inferred eigen
  good.eigen.reset();
  CHECK(check_derivation(good, cfg()).ok());
}

TEST_CASE("eigenvariable existential only in IPC") {
  Derivation d = node(Rule::ExL, "exists x. P(x) => exists x. P(x)",
                      {node(Rule::ExR, "P(a) => exists x. P(x)", {node(Rule::Ax, "P(a) => P(a)")})});
  CHECK(check_derivation(d, cfg(EpsMode::Augmented, CutPolicy::NoCut, Succedents::Single, Calculus::IPC)).ok());
  CHECK_FALSE(check_derivation(d, cfg()).ok());
}

TEST_CASE("cut policies") {
  Derivation cut = golden("pos_cut_example").derivation;
  CHECK(check_derivation(cut, cfg(EpsMode::Augmented, CutPolicy::DefinednessCutsOnly)).ok());
  CHECK(check_derivation(cut, cfg(EpsMode::Augmented, CutPolicy::AnyCut)).ok());
  CHECK(check_derivation(cut, cfg(EpsMode::Augmented, CutPolicy::NoCut)).has(ViolationCode::CutPolicyViolation));

  Derivation plain = golden("pos_translation_exinst").derivation;
  CHECK(check_derivation(plain, cfg(EpsMode::Literal, CutPolicy::AnyCut)).ok());
  CHECK(check_derivation(plain, cfg(EpsMode::Literal, CutPolicy::DefinednessCutsOnly)).has(ViolationCode::CutPolicyViolation));
}

TEST_CASE("policy monotonicity over the golden positives") {
  for (const auto& f : testing::golden_files("pos_")) {
    DerivationDocument doc = read_derivation(read_file(f));
    if (is_nj_rule(doc.derivation.rule)) continue;
    CalculusConfig c = doc.config();
    CAPTURE(f);
    REQUIRE(check_derivation(doc.derivation, c).ok());
    for (CutPolicy p : {CutPolicy::DefinednessCutsOnly, CutPolicy::AnyCut}) {
      if (p == CutPolicy::DefinednessCutsOnly && c.cut_policy == CutPolicy::AnyCut) continue;
      CalculusConfig wider = c;
      wider.cut_policy = p;
      CHECK(check_derivation(doc.derivation, wider).ok());
    }
  }
}

namespace {

Derivation weaken(Derivation d, const Formula& f) {
  d.conclusion.antecedent.insert(f);
  for (auto& p : d.premises) p = weaken(p, f);
  return d;
}

}  // namespace

TEST_CASE("weakening every antecedent keeps derivations correct") {
  Formula extra = parse_formula("Z(c) | W");
  for (const auto& f : testing::golden_files("pos_")) {
    DerivationDocument doc = read_derivation(read_file(f));
    if (is_nj_rule(doc.derivation.rule)) continue;
    CAPTURE(f);
    CHECK(check_derivation(weaken(doc.derivation, extra), doc.config()).ok());
  }
}

TEST_CASE("single-succedent mode reads an empty succedent as bot") {
  Derivation d = node(Rule::AxBot, "bot =>");
  CHECK(check_derivation(d, cfg()).ok());
  Derivation two = node(Rule::Ax, "P => P, Q");
  CHECK(check_derivation(two, cfg()).has(ViolationCode::RuleMismatch));
  CHECK(check_derivation(two, cfg(EpsMode::Augmented, CutPolicy::NoCut, Succedents::Multiple)).ok());
}

TEST_CASE("top axiom") {
  CHECK(check_derivation(node(Rule::AxTop, "P => top"), cfg()).ok());
  CHECK_FALSE(check_derivation(node(Rule::AxTop, "P => Q"), cfg()).ok());
}

TEST_CASE("natural deduction tags are rejected by the sequent kernel") {
  CHECK(check_derivation(node(Rule::Assume, "P => P"), cfg()).has(ViolationCode::RuleMismatch));
}

TEST_CASE("Hilbert axiom recognition") {
  CHECK(recognize_hilbert_axiom(parse_formula("(def(eps x. Q(x)) & forall x. P(x)) -> P(eps x. Q(x))")).schema ==
        HilbertSchema::EpsQ1);
  CHECK(recognize_hilbert_axiom(parse_formula("(def(a) & forall x. P(x)) -> P(a)")).schema == HilbertSchema::EpsQ1);
  CHECK(recognize_hilbert_axiom(parse_formula("(exists x. P(x)) -> P(eps x. P(x))")).schema == HilbertSchema::Critical);
  CHECK(recognize_hilbert_axiom(parse_formula("P(c) -> P(c)")).schema == HilbertSchema::None);
  HilbertInstance q2 = recognize_hilbert_axiom(parse_formula("(def(eps y. R(y)) & P(eps y. R(y))) -> exists x. P(x)"));
  CHECK(q2.schema == HilbertSchema::EpsQ2);
  CHECK(q2.term == parse_term("eps y. R(y)"));
}

TEST_CASE("Hilbert axiom derivations check") {
  Formula ex = parse_formula("exists x. P(x)");
  Formula all = parse_formula("forall x. P(x)");
  CalculusConfig any = cfg(EpsMode::Augmented, CutPolicy::AnyCut);
  for (HilbertInstance hi : {HilbertInstance{HilbertSchema::Critical, ex, ex.witness()},
                             HilbertInstance{HilbertSchema::EpsQ2, ex, Term::param("a")},
                             HilbertInstance{HilbertSchema::EpsQ2, ex, parse_term("eps x. Q(x)")},
                             HilbertInstance{HilbertSchema::EpsQ1, all, parse_term("eps x. Q(x)")},
                             HilbertInstance{HilbertSchema::EpsQ1, all, Term::param("b")}}) {
    Derivation d = hilbert_axiom_derivation(hi);
    CAPTURE(print(hilbert_axiom(hi)));
    CHECK(check_derivation(d, any).ok());
    CHECK(d.conclusion.antecedent.empty());
    CHECK(recognize_hilbert_axiom(hilbert_axiom(hi)).schema == hi.schema);
  }
  CHECK_THROWS_AS(hilbert_axiom_derivation({HilbertSchema::Critical, ex, Term::param("a")}), InvalidInstantiation);
  CHECK_THROWS_AS(hilbert_axiom_derivation({HilbertSchema::EpsQ1, ex, Term::param("a")}), InvalidInstantiation);
}

TEST_CASE("checking is deterministic") {
  Derivation d = golden("neg_epsilon_in_ipc").derivation;
  CalculusConfig c = golden("neg_epsilon_in_ipc").config();
  CheckReport a = check_derivation(d, c), b = check_derivation(d, c);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].path == b.violations[i].path);
    CHECK(a.violations[i].code == b.violations[i].code);
  }
}
