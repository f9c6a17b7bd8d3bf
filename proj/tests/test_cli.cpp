#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "data.hpp"
#include "doctest.h"
#include "epsk/parser.hpp"
#include "epsk/search.hpp"

using namespace epsk;
using testing::data_path;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  std::filesystem::create_directories("cli_scratch");
  return "cli_scratch/" + name;
}

}  // namespace

TEST_CASE("decide on the end-formula of the unsound instantiation") {
  std::string out = scratch("ip.json");
  Run r = run({"decide", "=> (C -> exists x. A(x)) -> exists x. (C -> A(x))", "--out", out});
  CHECK(r.code == 1);
  CHECK(r.out.find("Countermodel") != std::string::npos);
  CHECK(run({"validate-model", out}).code == 0);
  Run e = run({"eval", out, "(C -> exists x. A(x)) -> exists x. (C -> A(x))", "--format", "json"});
  CHECK(e.out.find("\"forced\": false") != std::string::npos);
}

TEST_CASE("prove and refute exit codes") {
  std::string p = scratch("p.json");
  CHECK(run({"prove", "=> P(c) -> P(c)", "--out", p}).code == 0);
  CHECK(run({"check", p}).code == 0);
  CHECK(run({"refute", "=> P(c) -> P(c)", "--out", p}).code == 1);
  CHECK(run({"refute", "=> P | ~P", "--out", scratch("lem.json")}).code == 0);
  CHECK(run({"prove", "=> P | ~P", "--out", scratch("lem.json")}).code == 1);
  CHECK(run({"prove", "=> ~~P(c) -> P(c)", "--worlds", "1", "--out", scratch("x.json")}).code == 2);
}

TEST_CASE("check uses the file's configuration and flags override it") {
  std::string cut = data_path("golden/pos_cut_example.json");
  CHECK(run({"check", cut, "--cut-policy", "definedness-only"}).code == 0);
  CHECK(run({"check", cut}).code == 0);
  Run r = run({"check", cut, "--cut-policy", "none"});
  CHECK(r.code == 1);
  CHECK(r.out.find("CutPolicyViolation") != std::string::npos);
  Run nj = run({"check", data_path("golden/pos_nj_forall_and.json"), "--format", "json"});
  CHECK(nj.code == 0);
  CHECK(nj.out.find("\"checker\": \"natded\"") != std::string::npos);
}

TEST_CASE("eval on the two-world model") {
  Run r = run({"eval", data_path("models/two_world.json"), "P(eps x. P(x)) -> exists x. P(x)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("w0: false") != std::string::npos);
  CHECK(r.out.find("w1: true") != std::string::npos);
}

TEST_CASE("translate both ways") {
  std::string nj = scratch("nj.json"), seq = scratch("seq.json");
  CHECK(run({"translate", data_path("golden/pos_critical_axiom.json"), "--to", "nj", "--out", nj}).code == 0);
  CHECK(run({"check", nj}).code == 0);
  CHECK(run({"translate", nj, "--to", "seq", "--out", seq}).code == 0);
  CHECK(run({"check", seq}).code == 0);
  CHECK(run({"translate", data_path("golden/neg_bad_axiom.json"), "--to", "nj"}).code == 1);
}

TEST_CASE("extend-model strictifies when needed") {
  std::string flat = scratch("flat.json"), out = scratch("flat_ext.json");
  write_file(flat, R"j({"flavor": "term", "worlds": ["w0", "w1"], "order": [["w0", "w1"]],
    "domains": {"w0": ["c"], "w1": ["c"]}, "atoms": {"w0": [], "w1": ["P(c)"]}, "tracked": ["eps x. P(x)"]})j");
  CHECK(run({"extend-model", flat, "--out", out}).code == 0);
  CHECK(run({"validate-model", out}).code == 0);
  std::string ip = scratch("ip_ext.json");
  CHECK(run({"extend-model", data_path("models/ip_countermodel.json"), "--track", "eps x. A(x)", "--out", ip}).code == 0);
  Run e = run({"eval", ip, "(C -> exists x. A(x)) -> exists x. (C -> A(x))"});
  CHECK(e.out.find("w0: false") != std::string::npos);
}

TEST_CASE("conserve agrees on the corpus") {
  Run r = run({"conserve", data_path("corpus/conservativity.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("(100%)") != std::string::npos);
}

TEST_CASE("json output is stable") {
  std::vector<std::string> args{"decide", "=> ((A -> B) -> A) -> A", "--format", "json", "--out", scratch("peirce.json")};
  Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"verdict\": \"Countermodel\"") != std::string::npos);
  Run c = run({"conserve", data_path("corpus/conservativity.txt"), "--format", "json"});
  CHECK(c.out == run({"conserve", data_path("corpus/conservativity.txt"), "--format", "json"}).out);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"decide"}).code == 3);
  CHECK(run({"decide", "=> (", "--out", scratch("x.json")}).code == 3);
  CHECK(run({"check", "no/such/file.json"}).code == 3);
  CHECK(run({"decide", "=> A", "--calculus", "lk"}).code == 3);
  CHECK(run({"translate", data_path("golden/pos_critical_axiom.json")}).code == 3);
  Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("decide") != std::string::npos);
}
