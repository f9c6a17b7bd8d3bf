#include <benchmark/benchmark.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "epsk/kernel.hpp"
#include "epsk/natded.hpp"
#include "epsk/parser.hpp"
#include "epsk/search.hpp"
#include "epsk/semantics.hpp"
#include "epsk/serialize.hpp"

using namespace epsk;

namespace {

std::string data(const std::string& rel) { return std::string(EPSK_DATA_DIR) + "/" + rel; }

std::vector<DerivationDocument> accepted_golden() {
  std::vector<DerivationDocument> out;
  for (const auto& e : std::filesystem::directory_iterator(data("golden"))) {
    if (e.path().filename().string().rfind("pos_", 0) != 0) continue;
    out.push_back(read_derivation(read_file(e.path().string())));
  }
  return out;
}

void BM_CheckGolden(benchmark::State& st) {
  auto docs = accepted_golden();
  for (auto _ : st)
    for (const auto& d : docs) {
      bool ok = is_nj_rule(d.derivation.rule) ? check_nj(d.derivation, d.config().eps_mode).ok()
                                              : check_derivation(d.derivation, d.config()).ok();
      benchmark::DoNotOptimize(ok);
    }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(docs.size()));
}
BENCHMARK(BM_CheckGolden);

void BM_ParsePrint(benchmark::State& st) {
  const std::string text = "forall x. (P(x) -> exists y. (R(x, y) & Q(eps z. (P(z) | R(z, x)))))";
  for (auto _ : st) benchmark::DoNotOptimize(print(parse_formula(text)));
}
BENCHMARK(BM_ParsePrint);

// Each corpus entry under both calculi.
void BM_DecideCorpus(benchmark::State& st) {
  std::istringstream in(read_file(data("corpus/conservativity.txt")));
  auto entries = parse_corpus(in);
  const Calculus calc = st.range(0) ? Calculus::IPCEps : Calculus::IPC;
  for (auto _ : st)
    for (const auto& e : entries) {
      SearchConfig cfg;
      cfg.calculus = calc;
      benchmark::DoNotOptimize(decide(e.sequent, cfg).verdict);
    }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(entries.size()));
}
BENCHMARK(BM_DecideCorpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DecideIP(benchmark::State& st) {
  Sequent ip = parse_sequent("=> (C -> exists x. A(x)) -> exists x. (C -> A(x))");
  SearchConfig cfg = SearchConfig{}.scaled(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(decide(ip, cfg).verdict);
}
BENCHMARK(BM_DecideIP)->Arg(1)->Arg(2);

// Fresh evaluator each iteration, so the forcing cache starts empty.
void BM_ForcingExtended(benchmark::State& st) {
  KripkeModel m0 = read_model(read_file(data("models/ip_countermodel.json")));
  TermSet tracked = {parse_formula("exists x. A(x)").witness(), parse_formula("exists x. (C -> A(x))").witness()};
  KripkeModel m = extend_with_epsilon(strictify_domains(m0), close_tracked(tracked));
  std::vector<Formula> fs;
  for (const char* s : {"(C -> exists x. A(x)) -> exists x. (C -> A(x))", "forall x. (A(x) | ~A(x))",
                        "A(eps x. A(x)) -> exists x. A(x)", "~~exists x. (C -> A(x))"})
    fs.push_back(parse_formula(s));
  for (auto _ : st) {
    Evaluator ev(m);
    for (const auto& f : fs)
      for (int w = 0; w < static_cast<int>(m.size()); ++w) benchmark::DoNotOptimize(ev.forces(w, f));
  }
}
BENCHMARK(BM_ForcingExtended);

void BM_ValidateModel(benchmark::State& st) {
  KripkeModel m = read_model(read_file(data("models/two_world.json")));
  for (auto _ : st) benchmark::DoNotOptimize(validate_model(m).ok());
}
BENCHMARK(BM_ValidateModel);

}  // namespace

BENCHMARK_MAIN();
