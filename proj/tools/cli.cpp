#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "epsk/natded.hpp"
#include "epsk/parser.hpp"
#include "epsk/search.hpp"
#include "epsk/serialize.hpp"
#include "json.hpp"

namespace epsk::cli {

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string calculus = "ipce";
  std::string eps_mode = "augmented";
  std::string cut_policy = "definedness-only";
  std::string succedents;
  int depth = 3;
  int eps_nesting = 2;
  int worlds = 8;
  int formulas = 64;
  std::string format = "human";
  std::string out;
  std::string to;
  bool strictify = false;
  std::vector<std::string> track;
  std::vector<std::string> positional;

  // Set after parsing: which configuration flags were given explicitly.
  bool has_calculus = false, has_eps_mode = false, has_cut_policy = false, has_succedents = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ctx {
  Options o;
  std::ostream& out;
  std::ostream& err;
  bool color = false;

  bool json_out() const { return o.format == "json"; }

  std::string paint(const std::string& s, bool good) const {
    if (!color) return s;
    return std::string(good ? "\x1b[32m" : "\x1b[31m") + s + "\x1b[0m";
  }
  void emit(const json& j) const { out << j.dump(2) << "\n"; }
};

template <class T, class P>
T flag(const std::string& value, P parse, const char* name) {
  auto v = parse(value);
  if (!v) throw UsageError(std::string("bad value for --") + name + ": " + value);
  return *v;
}

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.calculus = flag<Calculus>(o.calculus, parse_calculus, "calculus");
  c.eps_mode = flag<EpsMode>(o.eps_mode, parse_eps_mode, "eps-mode");
  c.cut_policy = flag<CutPolicy>(o.cut_policy, parse_cut_policy, "cut-policy");
  c.instantiation_depth = o.depth;
  c.eps_nesting = o.eps_nesting;
  c.world_budget = o.worlds;
  c.formula_budget = o.formulas;
  if (c.instantiation_depth < 0 || c.eps_nesting < 0 || c.world_budget < 1 || c.formula_budget < 1)
    throw UsageError("search bounds must be non-negative and budgets positive");
  return c;
}

// Flags given on the command line win over the file's own configuration.
CalculusConfig check_config(const Options& o, const DerivationDocument& doc) {
  CalculusConfig c = doc.config();
  if (o.has_calculus) c.calculus = flag<Calculus>(o.calculus, parse_calculus, "calculus");
  if (o.has_eps_mode) c.eps_mode = flag<EpsMode>(o.eps_mode, parse_eps_mode, "eps-mode");
  if (o.has_cut_policy) c.cut_policy = flag<CutPolicy>(o.cut_policy, parse_cut_policy, "cut-policy");
  if (o.has_succedents) c.succedents = flag<Succedents>(o.succedents, parse_succedents, "succedents");
  return c;
}

json config_json(const CalculusConfig& c) {
  return {{"calculus", calculus_flag(c.calculus)},
          {"eps_mode", eps_mode_flag(c.eps_mode)},
          {"succedents", succedents_flag(c.succedents)},
          {"cut_policy", cut_policy_flag(c.cut_policy)}};
}

Sequent sequent_arg(const std::string& s) {
  return parse_sequent(s.find("=>") == std::string::npos ? "=> " + s : s);
}

std::string check_report_line(const Violation& v) { return v.path + ": " + code_name(v.code) + ": " + v.detail; }

void dump_model(std::ostream& os, const KripkeModel& m) {
  for (std::size_t w = 0; w < m.size(); ++w) {
    os << "  " << m.worlds[w] << ":";
    for (int v : m.successors(static_cast<int>(w))) os << " < " << m.worlds[v];
    os << "\n    domain {";
    bool first = true;
    for (const auto& e : m.domains[w]) os << (first ? "" : ", ") << print(e), first = false;
    os << "}\n    atoms {";
    first = true;
    for (const auto& a : m.atoms[w]) os << (first ? "" : ", ") << print(a), first = false;
    os << "}\n";
    if (m.flavor == Flavor::EpsBot && w < m.valuation.size())
      for (const auto& [k, v] : m.valuation[w]) os << "    V(" << print(k) << ") = " << print(v) << "\n";
  }
}

// Re-reads a written certificate and checks it from scratch.
struct Certified {
  bool ok = false;
  std::string detail;
};

Certified verify_proof_text(const std::string& text, const Sequent& s) {
  DerivationDocument doc = read_derivation(text);
  if (!alpha_eq(doc.derivation.conclusion, s)) return {false, "certificate proves a different sequent"};
  CheckReport r = check_derivation(doc.derivation, doc.config());
  if (!r.ok()) return {false, check_report_line(r.violations.front())};
  return {true, "kernel accepts"};
}

Certified verify_model_text(const std::string& text, const Sequent& s) {
  KripkeModel m = read_model(text);
  ValidationReport v = validate_model(m);
  if (!v.ok()) return {false, std::string("model invalid: ") + issue_name(v.problems.front().issue)};
  Evaluator ev(m);
  if (ev.refuting_worlds(s).empty()) return {false, "no world refutes the sequent"};
  return {true, "valid model refuting the sequent"};
}

std::string proof_document(const SearchResult& r, const SearchConfig& cfg) {
  CalculusConfig pc = proof_config(cfg);
  DerivationDocument doc;
  doc.derivation = *r.proof;
  doc.calculus = pc.calculus;
  doc.eps_mode = pc.eps_mode;
  doc.succedents = pc.succedents;
  doc.cut_policy = pc.cut_policy;
  return write_derivation(doc);
}

}  // namespace

namespace {

enum class Goal { Prove, Refute, Decide };

int search_command(Ctx& c, Goal goal) {
  if (c.o.positional.size() != 1) throw UsageError("expected one sequent");
  Sequent s = sequent_arg(c.o.positional[0]);
  SearchConfig cfg = search_config(c.o);
  SearchResult r = decide(s, cfg);

  std::string path;
  Certified cert;
  if (r.verdict == Verdict::Proof) {
    path = c.o.out.empty() ? "proof.json" : c.o.out;
    write_file(path, proof_document(r, cfg));
    cert = verify_proof_text(read_file(path), s);
  } else if (r.verdict == Verdict::Countermodel) {
    path = c.o.out.empty() ? "countermodel.json" : c.o.out;
    write_file(path, write_model(*r.model));
    cert = verify_model_text(read_file(path), s);
  }
  // An artifact that fails to re-verify is no verdict at all.
  Verdict v = r.verdict;
  if (v != Verdict::Exhausted && !cert.ok) v = Verdict::Exhausted;

  int code = Exit::Exhausted;
  if (v == Verdict::Proof) code = goal == Goal::Refute ? Exit::Failed : Exit::Ok;
  if (v == Verdict::Countermodel) code = goal == Goal::Refute ? Exit::Ok : Exit::Failed;

  if (c.json_out()) {
    json j;
    j["sequent"] = print(s);
    j["verdict"] = verdict_name(v);
    if (!path.empty()) {
      j["certificate"] = path;
      j["verified"] = cert.ok;
      j["check"] = cert.detail;
    }
    if (v == Verdict::Proof) j["proof_size"] = r.proof->size();
    if (v == Verdict::Countermodel) {
      j["refuting_world"] = r.model->worlds[r.refuting_world];
      j["model"] = json::parse(write_model(*r.model));
    }
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    j["steps"] = r.steps;
    c.emit(j);
  } else {
    c.out << "sequent: " << print(s) << "\n";
    c.out << "verdict: " << c.paint(verdict_name(v), code == Exit::Ok) << "\n";
    if (!path.empty()) c.out << "certificate: " << path << " (" << (cert.ok ? "re-verified: " : "REJECTED: ") << cert.detail << ")\n";
    if (v == Verdict::Proof) c.out << "proof size: " << r.proof->size() << "\n";
    if (v == Verdict::Countermodel) {
      c.out << "refuted at: " << r.model->worlds[r.refuting_world] << "\n";
      dump_model(c.out, *r.model);
    }
    if (!r.diagnostic.empty()) c.out << "diagnostic: " << r.diagnostic << "\n";
  }
  return code;
}

int check_command(Ctx& c) {
  if (c.o.positional.size() != 1) throw UsageError("expected one derivation file");
  const std::string& file = c.o.positional[0];
  DerivationDocument doc = read_derivation(read_file(file));
  CalculusConfig cfg = check_config(c.o, doc);
  bool nj = is_nj_rule(doc.derivation.rule);
  CheckReport r = nj ? check_nj(doc.derivation, cfg.eps_mode) : check_derivation(doc.derivation, cfg);

  if (c.json_out()) {
    json j;
    j["file"] = file;
    j["checker"] = nj ? "natded" : "kernel";
    j["config"] = config_json(cfg);
    j["conclusion"] = print(doc.derivation.conclusion);
    j["ok"] = r.ok();
    json vs = json::array();
    for (const auto& v : r.violations) vs.push_back({{"path", v.path}, {"code", code_name(v.code)}, {"detail", v.detail}});
    j["violations"] = std::move(vs);
    c.emit(j);
  } else {
    c.out << file << ": " << (nj ? "natural deduction" : "sequent calculus") << ", " << doc.derivation.size()
          << " nodes\n";
    c.out << "conclusion: " << print(doc.derivation.conclusion) << "\n";
    c.out << (r.ok() ? c.paint("ok", true) : c.paint("rejected", false)) << "\n";
    for (const auto& v : r.violations) c.out << "  " << check_report_line(v) << "\n";
  }
  return r.ok() ? Exit::Ok : Exit::Failed;
}

int eval_command(Ctx& c) {
  if (c.o.positional.size() != 2) throw UsageError("expected a model file and a formula");
  KripkeModel m = read_model(read_file(c.o.positional[0]));
  Formula f = parse_formula(c.o.positional[1]);
  Evaluator ev(m);
  json worlds = json::array();
  if (!c.json_out()) c.out << "formula: " << print(f) << "\n";
  for (std::size_t w = 0; w < m.size(); ++w) {
    bool v = ev.forces(static_cast<int>(w), f);
    if (c.json_out())
      worlds.push_back({{"world", m.worlds[w]}, {"forced", v}});
    else
      c.out << "  " << m.worlds[w] << ": " << c.paint(v ? "true" : "false", v) << "\n";
  }
  if (c.json_out()) c.emit({{"formula", print(f)}, {"worlds", worlds}});
  return Exit::Ok;
}

int validate_command(Ctx& c) {
  if (c.o.positional.size() != 1) throw UsageError("expected one model file");
  KripkeModel m = read_model(read_file(c.o.positional[0]));
  ValidationReport r = validate_model(m);
  if (c.json_out()) {
    json ps = json::array();
    for (const auto& p : r.problems)
      ps.push_back({{"issue", issue_name(p.issue)},
                    {"world", p.world.empty() ? json(nullptr) : json(p.world)},
                    {"detail", p.detail}});
    c.emit({{"file", c.o.positional[0]}, {"flavor", flavor_name(m.flavor)}, {"worlds", m.size()}, {"ok", r.ok()},
            {"problems", ps}});
  } else {
    c.out << c.o.positional[0] << ": " << flavor_name(m.flavor) << " model, " << m.size() << " worlds\n";
    c.out << (r.ok() ? c.paint("valid", true) : c.paint("invalid", false)) << "\n";
    for (const auto& p : r.problems)
      c.out << "  " << issue_name(p.issue) << (p.world.empty() ? "" : " at " + p.world) << ": " << p.detail
            << "\n";
  }
  return r.ok() ? Exit::Ok : Exit::Failed;
}

}  // namespace

namespace {

void deliver(Ctx& c, const std::string& text, const std::string& what) {
  if (c.o.out.empty()) {
    c.out << text;
    return;
  }
  write_file(c.o.out, text);
  if (c.json_out())
    c.emit({{"wrote", c.o.out}, {"content", what}});
  else
    c.out << "wrote " << what << " to " << c.o.out << "\n";
}

int translate_command(Ctx& c) {
  if (c.o.positional.size() != 1) throw UsageError("expected one derivation file");
  if (c.o.to != "nj" && c.o.to != "seq") throw UsageError("--to must be nj or seq");
  DerivationDocument in = read_derivation(read_file(c.o.positional[0]));
  EpsMode mode = check_config(c.o, in).eps_mode;
  DerivationDocument doc;
  doc.eps_mode = mode;
  try {
    if (c.o.to == "nj") {
      doc.derivation = seq_to_nj(in.derivation, mode);
    } else {
      doc.derivation = nj_to_seq(in.derivation, mode);
      doc.calculus = Calculus::IPCEps;
      doc.succedents = Succedents::Single;
      doc.cut_policy = CutPolicy::AnyCut;
    }
  } catch (const TranslationError& e) {
    c.err << "translate: " << e.what() << "\n";
    return Exit::Failed;
  }
  deliver(c, write_derivation(doc), c.o.to == "nj" ? "natural deduction derivation" : "sequent derivation");
  return Exit::Ok;
}

int extend_command(Ctx& c) {
  if (c.o.positional.size() != 1) throw UsageError("expected one model file");
  KripkeModel m = read_model(read_file(c.o.positional[0]));
  TermSet tracked = m.tracked;
  for (const auto& t : c.o.track) tracked.insert(parse_term(t));
  bool strictified = false;
  KripkeModel e;
  try {
    try {
      if (c.o.strictify) throw PreconditionViolation(Precondition::DomainsNotStrict, "requested");
      e = extend_with_epsilon(m, tracked);
    } catch (const PreconditionViolation& p) {
      if (p.reason != Precondition::DomainsNotStrict) throw;
      strictified = true;
      e = extend_with_epsilon(strictify_domains(m), tracked);
    }
  } catch (const PreconditionViolation& p) {
    c.err << "extend-model: " << p.what() << "\n";
    return Exit::Failed;
  }
  ValidationReport r = validate_model(e);
  if (!r.ok()) {
    c.err << "extend-model: result does not validate: " << issue_name(r.problems.front().issue) << ": "
          << r.problems.front().detail << "\n";
    return Exit::Failed;
  }
  if (strictified && !c.json_out() && !c.o.out.empty()) c.out << "domains made strictly increasing first\n";
  deliver(c, write_model(e), "epsbot model");
  return Exit::Ok;
}

struct Side {
  Verdict verdict = Verdict::Exhausted;
  bool certified = false;
  std::string detail;
  long steps = 0;
};

Side conserve_side(const Sequent& s, SearchConfig cfg, Calculus calc, const std::string& save) {
  cfg.calculus = calc;
  SearchResult r = decide(s, cfg);
  Side out{r.verdict, false, r.diagnostic, r.steps};
  std::string text;
  if (r.verdict == Verdict::Proof) text = proof_document(r, cfg);
  if (r.verdict == Verdict::Countermodel) text = write_model(*r.model);
  if (text.empty()) return out;
  Certified k = r.verdict == Verdict::Proof ? verify_proof_text(text, s) : verify_model_text(text, s);
  out.certified = k.ok;
  out.detail = k.detail;
  if (!save.empty()) write_file(save, text);
  return out;
}

int conserve_command(Ctx& c) {
  if (c.o.positional.size() != 1) throw UsageError("expected one corpus file");
  std::istringstream in(read_file(c.o.positional[0]));
  std::vector<CorpusEntry> entries = parse_corpus(in);
  SearchConfig cfg = search_config(c.o);

  int agree = 0, disagree = 0, exhausted = 0, unexpected = 0;
  json rows = json::array();
  if (!c.json_out()) c.out << "line  ipc           ipce          agree  sequent\n";
  for (const auto& e : entries) {
    json row = {{"line", e.line}, {"sequent", print(e.sequent)}};
    if (!eps_terms(e.sequent).empty()) {
      ++unexpected;
      row["error"] = "not epsilon-free";
      if (!c.json_out()) c.out << e.line << ": not epsilon-free: " << e.text << "\n";
      rows.push_back(row);
      continue;
    }
    std::string stem = c.o.out.empty() ? "" : c.o.out + "/line" + std::to_string(e.line);
    Side a = conserve_side(e.sequent, cfg, Calculus::IPC, stem.empty() ? "" : stem + "-ipc.json");
    Side b = conserve_side(e.sequent, cfg, Calculus::IPCEps, stem.empty() ? "" : stem + "-ipce.json");
    bool decided = a.verdict != Verdict::Exhausted && b.verdict != Verdict::Exhausted && a.certified && b.certified;
    bool same = decided && a.verdict == b.verdict;
    if (same) ++agree;
    else if (decided) ++disagree;
    else ++exhausted;
    std::string got = !same ? "unknown" : a.verdict == Verdict::Proof ? "provable" : "refutable";
    bool expect_ok = !e.expect || *e.expect == "unknown" || *e.expect == got;
    if (!expect_ok) ++unexpected;
    auto side_json = [](const Side& s) {
      return json{{"verdict", verdict_name(s.verdict)}, {"certified", s.certified}, {"detail", s.detail},
                  {"steps", s.steps}};
    };
    row["ipc"] = side_json(a);
    row["ipce"] = side_json(b);
    row["agree"] = same;
    if (e.expect) row["expect"] = *e.expect;
    rows.push_back(row);
    if (!c.json_out()) {
      auto cell = [](const Side& s) {
        std::string v = verdict_name(s.verdict);
        if (s.verdict != Verdict::Exhausted) v += s.certified ? "+" : "!";
        v.resize(14, ' ');
        return v;
      };
      std::string ln = std::to_string(e.line);
      ln.resize(6, ' ');
      c.out << ln << cell(a) << cell(b) << c.paint(same ? "yes" : "no ", same) << "    " << print(e.sequent)
            << (expect_ok ? "" : "   [expected " + *e.expect + "]") << "\n";
    }
  }
  int total = static_cast<int>(entries.size());
  if (c.json_out()) {
    c.emit({{"corpus", c.o.positional[0]},
            {"entries", total},
            {"agree", agree},
            {"disagree", disagree},
            {"undecided", exhausted},
            {"unexpected", unexpected},
            {"rows", rows}});
  } else {
    c.out << "agreement: " << agree << "/" << total;
    if (total > 0) c.out << " (" << (100 * agree / total) << "%)";
    c.out << ", disagreements " << disagree << ", undecided " << exhausted << ", unexpected " << unexpected << "\n";
    c.out << "(+ certificate re-verified, ! certificate rejected)\n";
  }
  if (disagree > 0 || unexpected > 0) return Exit::Failed;
  return exhausted > 0 ? Exit::Exhausted : Exit::Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx c{{}, out, err};
  if (const char* col = std::getenv("EPSK_COLOR")) c.color = std::string(col) == "1";
  Options& o = c.o;

  CLI::App app{"epsk: proof kernel, Kripke models and bounded search for intuitionistic logic with epsilon", "epsk"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s, bool search, bool calc) {
    s->add_option("--format", o.format, "human|json")->check(CLI::IsMember({"human", "json"}));
    s->add_option("--out", o.out, "output path");
    if (calc) {
      s->add_option("--calculus", o.calculus, "ipc|ipce");
      s->add_option("--eps-mode", o.eps_mode, "literal|augmented");
      s->add_option("--cut-policy", o.cut_policy, "any|definedness-only|none");
    }
    if (search) {
      s->add_option("--depth", o.depth, "instances per quantified formula and world");
      s->add_option("--eps-nesting", o.eps_nesting, "max rank of decided epsilon-terms");
      s->add_option("--worlds", o.worlds, "max length of a chain of worlds");
      s->add_option("--formulas", o.formulas, "max formulas per sequent");
    }
  };
  struct Cmd {
    const char* name;
    const char* help;
    const char* arg;
    bool search, calc;
  };
  const Cmd cmds[] = {
      {"check", "check a derivation file (sequent calculus or natural deduction)", "derivation.json", false, true},
      {"prove", "search for a proof; exit 0 when one is found", "sequent", true, true},
      {"refute", "search for a countermodel; exit 0 when one is found", "sequent", true, true},
      {"decide", "search both ways; exit 0 proof, 1 countermodel", "sequent", true, true},
      {"eval", "forcing of a formula at every world of a model", "model.json formula", false, false},
      {"validate-model", "check the model conditions", "model.json", false, false},
      {"translate", "translate between sequent calculus and natural deduction", "derivation.json", false, true},
      {"extend-model", "extend an epsilon-free tree model with epsilon-values", "model.json", false, false},
      {"conserve", "compare IPC and IPCe provers on an epsilon-free corpus", "corpus.txt", true, false},
  };
  std::map<CLI::App*, std::string> names;
  for (const auto& d : cmds) {
    CLI::App* s = app.add_subcommand(d.name, d.help);
    common(s, d.search, d.calc);
    s->add_option("args", o.positional, d.arg)->required();
    names[s] = d.name;
    if (std::string(d.name) == "check" || std::string(d.name) == "translate")
      s->add_option("--succedents", o.succedents, "single|multiple");
    if (std::string(d.name) == "translate") s->add_option("--to", o.to, "nj|seq")->required();
    if (std::string(d.name) == "extend-model") {
      s->add_option("--track", o.track, "epsilon-terms to track in addition to the file's");
      s->add_flag("--strictify", o.strictify, "always make domains strictly increasing first");
    }
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return Exit::Usage;
  }
  for (auto* s : app.get_subcommands()) {
    auto set = [&](const char* f) {
      CLI::Option* opt = s->get_option_no_throw(f);
      return opt && opt->count() > 0;
    };
    o.has_calculus = set("--calculus");
    o.has_eps_mode = set("--eps-mode");
    o.has_cut_policy = set("--cut-policy");
    o.has_succedents = set("--succedents");
    const std::string& name = names[s];
    try {
      if (name == "check") return check_command(c);
      if (name == "prove") return search_command(c, Goal::Prove);
      if (name == "refute") return search_command(c, Goal::Refute);
      if (name == "decide") return search_command(c, Goal::Decide);
      if (name == "eval") return eval_command(c);
      if (name == "validate-model") return validate_command(c);
      if (name == "translate") return translate_command(c);
      if (name == "extend-model") return extend_command(c);
      if (name == "conserve") return conserve_command(c);
    } catch (const UsageError& e) {
      err << name << ": " << e.what() << "\n" << s->help();
      return Exit::Usage;
    } catch (const ParseError& e) {
      err << name << ": parse error at " << e.what() << "\n";
      return Exit::Usage;
    } catch (const SerializeError& e) {
      err << name << ": " << e.what() << "\n";
      return Exit::Usage;
    } catch (const UnTrackedEpsilonTerm& e) {
      err << name << ": " << e.what() << "\n";
      return Exit::Failed;
    }
  }
  return Exit::Usage;
}

}  // namespace epsk::cli
