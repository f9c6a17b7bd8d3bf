#include <sstream>

#include "data.hpp"
#include "doctest.h"
#include "epsk/parser.hpp"
#include "epsk/serialize.hpp"

using namespace epsk;

TEST_CASE("derivation files round trip") {
  for (const auto& f : testing::golden_files()) {
    CAPTURE(f);
    std::string text = read_file(f);
    DerivationDocument doc = read_derivation(text);
    CHECK(write_derivation(doc) == text);
  }
}

TEST_CASE("derivation fields") {
  DerivationDocument doc = read_derivation(R"j({"rule": "AllR", "eigen": "a", "conclusion": "forall x. P(x) => forall x. P(x)",
    "cut_policy": "none", "premises": [{"rule": "AllL", "witness": "a", "conclusion": "forall x. P(x) => P(a)",
    "premises": [{"rule": "Ax", "conclusion": "P(a) => P(a)"}]}]})j");
  CHECK(doc.derivation.rule == Rule::AllR);
  CHECK(*doc.derivation.eigen == "a");
  CHECK(*doc.derivation.premises[0].witness == Term::param("a"));
  CHECK(doc.derivation.premises[0].premises[0].premises.empty());
  CHECK(doc.config().cut_policy == CutPolicy::NoCut);
  CHECK(doc.config().eps_mode == EpsMode::Augmented);
}

TEST_CASE("bad derivation files") {
  CHECK_THROWS_AS(read_derivation("{"), SerializeError);
  CHECK_THROWS_AS(read_derivation(R"j({"rule": "Nope", "conclusion": "=> top"})j"), SerializeError);
  CHECK_THROWS_AS(read_derivation(R"j({"rule": "Ax"})j"), SerializeError);
  CHECK_THROWS_AS(read_derivation(R"j({"rule": "Ax", "conclusion": "=> ("})j"), SerializeError);
  CHECK_THROWS_AS(read_derivation(R"j({"rule": "Ax", "conclusion": "=> top", "eps_mode": "loose"})j"), SerializeError);
}

TEST_CASE("model files round trip") {
  for (const char* name : {"two_world", "ip_countermodel"}) {
    KripkeModel m = testing::stored_model(name);
    KripkeModel back = read_model(write_model(m));
    CHECK(back.worlds == m.worlds);
    CHECK(back.le == m.le);
    CHECK(back.domains == m.domains);
    CHECK(back.atoms == m.atoms);
    CHECK(back.tracked == m.tracked);
    CHECK(write_model(back) == write_model(m));
  }
  KripkeModel e = extend_with_epsilon(testing::stored_model("ip_countermodel"), {parse_term("eps x. A(x)")});
  KripkeModel back = read_model(write_model(e));
  CHECK(back.valuation == e.valuation);
  CHECK(validate_model(back).ok());
}

TEST_CASE("order is closed on reading") {
  KripkeModel m = read_model(R"j({"flavor": "term", "worlds": ["a", "b", "c"], "order": [["a", "b"], ["b", "c"]],
    "domains": {"a": ["c"], "b": ["c"], "c": ["c"]}, "atoms": {}})j");
  CHECK(m.below(0, 2));
  CHECK_FALSE(m.below(2, 0));
  CHECK_THROWS_AS(read_model(R"j({"flavor": "term", "worlds": ["a"], "order": [["a", "z"]]})j"), SerializeError);
  CHECK_THROWS_AS(read_model(R"j({"flavor": "plain", "worlds": []})j"), SerializeError);
  CHECK_THROWS_AS(read_model(R"j({"flavor": "term", "worlds": ["a"], "atoms": {"a": ["P | Q"]}})j"), SerializeError);
}

TEST_CASE("corpus format") {
  std::istringstream in("# comment\n\n=> A -> A   # EXPECT provable\nP(c) => P(d) # EXPECT refutable\nA | ~A\n");
  auto es = parse_corpus(in);
  REQUIRE(es.size() == 3);
  CHECK(es[0].line == 3);
  CHECK(*es[0].expect == "provable");
  CHECK(*es[1].expect == "refutable");
  CHECK_FALSE(es[2].expect);
  CHECK(es[2].sequent.antecedent.empty());
  std::istringstream bad("=> (\n");
  CHECK_THROWS_AS(parse_corpus(bad), SerializeError);
}

TEST_CASE("flags") {
  CHECK(parse_cut_policy("definedness-only") == CutPolicy::DefinednessCutsOnly);
  CHECK(std::string(cut_policy_flag(CutPolicy::NoCut)) == "none");
  CHECK(parse_calculus("ipc") == Calculus::IPC);
  CHECK_FALSE(parse_calculus("lj"));
  CHECK(parse_eps_mode("literal") == EpsMode::Literal);
  CHECK(parse_succedents("multiple") == Succedents::Multiple);
}
