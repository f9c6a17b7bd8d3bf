#include "data.hpp"
#include "doctest.h"
#include "epsk/parser.hpp"
#include "epsk/semantics.hpp"
#include "generators.hpp"

using namespace epsk;
using testing::stored_model;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

KripkeModel one_world(Flavor fl, TermSet dom, FormulaSet atoms) {
  KripkeModel m;
  m.flavor = fl;
  m.add_world("w0", std::move(dom), std::move(atoms));
  m.set_order({});
  if (fl == Flavor::EpsBot) m.valuation.assign(1, {});
  return m;
}

}  // namespace

TEST_CASE("one world") {
  KripkeModel m = one_world(Flavor::Term, {T("c")}, {F("P(c)")});
  CHECK(forces(m, 0, F("exists x. P(x)")));
  CHECK(forces(m, 0, F("forall x. P(x)")));
  CHECK_FALSE(forces(m, 0, F("Q(c)")));
  CHECK(sequent_valid(m, parse_sequent("P(c) => P(c)")));
}

TEST_CASE("the two-world term model") {
  KripkeModel m = stored_model("two_world");
  REQUIRE(validate_model(m).ok());
  CHECK(forces(m, 0, F("P(eps x. P(x))")));
  CHECK_FALSE(forces(m, 0, F("exists x. P(x)")));
  CHECK_FALSE(forces(m, 0, F("P(eps x. P(x)) -> exists x. P(x)")));
  CHECK(forces(m, 1, F("P(eps x. P(x)) -> exists x. P(x)")));
  CHECK_FALSE(defined_at(m, 0, T("eps x. P(x)")));
  CHECK(defined_at(m, 1, T("eps x. P(x)")));
  CHECK(defined_at(m, 0, T("c")));
  CHECK_FALSE(sequent_valid(m, parse_sequent("=> P(eps x. P(x)) -> exists x. P(x)")));
}

TEST_CASE("monotonicity violations are reported") {
  KripkeModel m = stored_model("two_world");
  m.atoms[0].insert(F("P(c)"));
  CHECK(validate_model(m).has(ModelIssue::MonotonicityViolation));
}

TEST_CASE("undefined elements in atoms") {
  KripkeModel m;
  m.flavor = Flavor::EpsBot;
  m.add_world("w0", {T("c")}, {F("P(d)")});
  m.add_world("w1", {T("c"), T("d")}, {F("P(d)")});
  m.set_order({{0, 1}});
  m.valuation.assign(2, {});
  CHECK(validate_model(m).has(ModelIssue::UndefinedElementViolation));
  m.atoms[0].clear();
  CHECK(validate_model(m).ok());
  // atoms about elements outside the domain are false
  m.atoms[0].insert(F("P(d)"));
  CHECK_FALSE(forces(m, 0, F("P(d)")));
}

TEST_CASE("epsbot valuation conditions") {
  KripkeModel m;
  m.flavor = Flavor::EpsBot;
  m.add_world("w0", {T("c")}, {});
  m.add_world("w1", {T("c"), T("d")}, {F("P(d)")});
  m.set_order({{0, 1}});
  m.tracked = {T("eps x. P(x)")};
  m.valuation = {{{T("eps x. P(x)"), T("d")}}, {{T("eps x. P(x)"), T("d")}}};
  CHECK(validate_model(m).ok());
  CHECK_FALSE(forces(m, 0, F("P(eps x. P(x))")));
  CHECK(forces(m, 1, F("P(eps x. P(x))")));

  // a defined value outside the domain, and an undefined one inside
  KripkeModel bad = m;
  bad.valuation[1][T("eps x. P(x)")] = T("c");
  ValidationReport r = validate_model(bad);
  CHECK(r.has(ModelIssue::CriticalConditionViolation));
  bad = m;
  bad.valuation[0][T("eps x. P(x)")] = T("c");
  CHECK(validate_model(bad).has(ModelIssue::UndefinedValueInDomain));

  // the critical condition can be switched off
  KripkeModel crit = m;
  crit.valuation[1][T("eps x. P(x)")] = T("c");
  ValidationOptions off;
  off.critical_condition = false;
  CHECK_FALSE(validate_model(crit, off).has(ModelIssue::CriticalConditionViolation));

  KripkeModel missing = m;
  missing.valuation[0].clear();
  CHECK(validate_model(missing).has(ModelIssue::MissingValuation));
  CHECK_THROWS_AS(forces(m, 0, F("P(eps x. Q(x))")), UnTrackedEpsilonTerm);
}

TEST_CASE("nested epsilon-terms evaluate innermost first") {
  KripkeModel m;
  m.flavor = Flavor::EpsBot;
  m.add_world("w0", {T("c"), T("d")}, {F("R(d)"), F("Q(c, d)")});
  m.set_order({});
  m.tracked = close_tracked({T("eps x. Q(x, eps y. R(y))")});
  CHECK(m.tracked.size() == 2);
  m.valuation = {{{T("eps y. R(y)"), T("d")}, {T("eps x. Q(x, d)"), T("c")}}};
  Evaluator ev(m);
  CHECK(ev.key(0, T("eps x. Q(x, eps y. R(y))")) == T("eps x. Q(x, d)"));
  CHECK(ev.value(0, T("eps x. Q(x, eps y. R(y))")) == T("c"));
  CHECK(ev.forces(0, F("Q(eps x. Q(x, eps y. R(y)), eps y. R(y))")));
  CHECK(validate_model(m).ok());
}

TEST_CASE("structural problems") {
  KripkeModel m = one_world(Flavor::Term, {}, {});
  CHECK(validate_model(m).has(ModelIssue::EmptyDomain));
  KripkeModel d;
  d.flavor = Flavor::Term;
  d.add_world("w0", {T("c"), T("d")});
  d.add_world("w1", {T("c")});
  d.set_order({{0, 1}});
  CHECK(validate_model(d).has(ModelIssue::DomainNotMonotone));
}

TEST_CASE("the critical formula holds in enumerated epsbot models") {
  // P(eps x. P(x)) -> exists x. P(x) at the one-world models
  for (int k = 0; k < 4; ++k) {
    KripkeModel m = one_world(Flavor::EpsBot, {T("c")}, k & 1 ? FormulaSet{F("P(c)")} : FormulaSet{});
    m.add_world("w1", {T("c"), T("d")}, m.atoms[0]);
    if (k & 2) m.atoms[1].insert(F("P(d)"));
    m.set_order({{0, 1}});
    m.tracked = {T("eps x. P(x)")};
    m = extend_with_epsilon(one_world(Flavor::Term, {T("c")}, m.atoms[0]), m.tracked);
    CHECK(validate_model(m).ok());
    CHECK(forces(m, 0, F("P(eps x. P(x)) -> exists x. P(x)")));
  }
}

TEST_CASE("extension of the IP countermodel") {
  KripkeModel m0 = stored_model("ip_countermodel");
  Formula ip = F("(C -> exists x. A(x)) -> exists x. (C -> A(x))");
  REQUIRE(validate_model(m0).ok());
  CHECK_FALSE(forces(m0, 0, ip));
  KripkeModel m = extend_with_epsilon(m0, {T("eps x. A(x)"), T("eps x. C -> A(x)")});
  CHECK(m.flavor == Flavor::EpsBot);
  CHECK(validate_model(m).ok());
  CHECK_FALSE(forces(m, 0, ip));
  CHECK(forces(m, 1, F("A(eps x. A(x))")));
  // at w0 nothing is defined, so the value lies outside D(w0)
  CHECK(m.valuation[0].at(T("eps x. A(x)")) == T("d"));
}

TEST_CASE("extension preconditions") {
  KripkeModel flat;
  flat.flavor = Flavor::Term;
  flat.add_world("w0", {T("c")});
  flat.add_world("w1", {T("c")});
  flat.set_order({{0, 1}});
  try {
    extend_with_epsilon(flat, {});
    FAIL("accepted");
  } catch (const PreconditionViolation& p) {
    CHECK(p.reason == Precondition::DomainsNotStrict);
  }
  // In a single world every epsilon-term is defined, so no slot outside
  // the domain is ever needed.
  KripkeModel one = one_world(Flavor::Term, {T("c")}, {});
  KripkeModel ext = extend_with_epsilon(one, {T("eps x. P(x)")});
  CHECK(defined_at(ext, 0, T("eps x. P(x)")));
  CHECK(validate_model(ext).ok());
  KripkeModel vee;
  vee.flavor = Flavor::Term;
  vee.add_world("a", {T("c")});
  vee.add_world("b", {T("c")});
  vee.add_world("top", {T("c")});
  vee.set_order({{0, 2}, {1, 2}});
  CHECK_FALSE(tree_root(vee).has_value());
  CHECK_THROWS_AS(extend_with_epsilon(vee, {}), PreconditionViolation);
}

TEST_CASE("strictify duplicates a root element") {
  KripkeModel flat;
  flat.flavor = Flavor::Term;
  flat.add_world("w0", {T("c")}, {F("P(c)")});
  flat.add_world("w1", {T("c")}, {F("P(c)")});
  flat.set_order({{0, 1}});
  KripkeModel s = strictify_domains(flat);
  CHECK(s.domains[0] == TermSet{T("c"), T("c_w0")});
  CHECK(s.domains[1] == TermSet{T("c"), T("c_w0"), T("c_w1")});
  CHECK(s.atoms[1].count(F("P(c_w1)")));
  CHECK(validate_model(s).ok());
  CHECK_NOTHROW(extend_with_epsilon(s, {}));

  KripkeModel one = one_world(Flavor::Term, {T("c")}, {});
  CHECK(strictify_domains(one).domains[0].size() == 2);
  CHECK_THROWS_AS(strictify_domains(one_world(Flavor::Term, {}, {})), PreconditionViolation);
}

TEST_CASE("random models validate and are monotone") {
  testing::FormulaGen g(11);
  TermSet tracked{T("eps x. P(x)"), T("eps x. Q(x)")};
  for (int i = 0; i < 20; ++i) {
    for (KripkeModel m : {testing::random_term_model(g, tracked), testing::random_epsbot_model(g, tracked)}) {
      REQUIRE(validate_model(m).ok());
      Evaluator ev(m);
      for (int j = 0; j < 20; ++j) {
        Formula f = g.formula(3);
        for (int w = 0; w < static_cast<int>(m.size()); ++w)
          for (int v = 0; v < static_cast<int>(m.size()); ++v)
            if (m.below(w, v) && ev.forces(w, f)) CHECK(ev.forces(v, f));
      }
    }
  }
}
