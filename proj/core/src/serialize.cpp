#include "epsk/serialize.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "epsk/parser.hpp"
#include "json.hpp"

namespace epsk {

using json = nlohmann::ordered_json;

const char* calculus_flag(Calculus c) { return c == Calculus::IPC ? "ipc" : "ipce"; }
const char* eps_mode_flag(EpsMode m) { return m == EpsMode::Literal ? "literal" : "augmented"; }
const char* succedents_flag(Succedents s) { return s == Succedents::Single ? "single" : "multiple"; }
const char* cut_policy_flag(CutPolicy p) {
  switch (p) {
    case CutPolicy::AnyCut: return "any";
    case CutPolicy::DefinednessCutsOnly: return "definedness-only";
    case CutPolicy::NoCut: return "none";
  }
  return "?";
}

std::optional<Calculus> parse_calculus(const std::string& s) {
  if (s == "ipc") return Calculus::IPC;
  if (s == "ipce") return Calculus::IPCEps;
  return std::nullopt;
}
std::optional<EpsMode> parse_eps_mode(const std::string& s) {
  if (s == "literal") return EpsMode::Literal;
  if (s == "augmented") return EpsMode::Augmented;
  return std::nullopt;
}
std::optional<Succedents> parse_succedents(const std::string& s) {
  if (s == "single") return Succedents::Single;
  if (s == "multiple") return Succedents::Multiple;
  return std::nullopt;
}
std::optional<CutPolicy> parse_cut_policy(const std::string& s) {
  if (s == "any") return CutPolicy::AnyCut;
  if (s == "definedness-only") return CutPolicy::DefinednessCutsOnly;
  if (s == "none") return CutPolicy::NoCut;
  return std::nullopt;
}

CalculusConfig DerivationDocument::config(CalculusConfig base) const {
  if (calculus) base.calculus = *calculus;
  if (eps_mode) base.eps_mode = *eps_mode;
  if (succedents) base.succedents = *succedents;
  if (cut_policy) base.cut_policy = *cut_policy;
  return base;
}

namespace {

json tree(const Derivation& d) {
  json j;
  j["rule"] = rule_name(d.rule);
  j["conclusion"] = print(d.conclusion);
  if (d.witness) j["witness"] = print(*d.witness);
  if (d.eigen) j["eigen"] = *d.eigen;
  if (d.cut_formula) j["cut_formula"] = print(*d.cut_formula);
  json ps = json::array();
  for (const auto& p : d.premises) ps.push_back(tree(p));
  j["premises"] = std::move(ps);
  return j;
}

std::string at(const std::string& path, const std::string& msg) { return path + ": " + msg; }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw SerializeError(at(path, std::string("missing \"") + key + "\""));
  return j.at(key);
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) throw SerializeError(at(path, "expected a string"));
  return j.get<std::string>();
}

template <class F>
auto parsed(F f, const std::string& text, const std::string& path) {
  try {
    return f(text);
  } catch (const ParseError& e) {
    throw SerializeError(at(path, "\"" + text + "\": " + e.what()));
  }
}

Derivation untree(const json& j, const std::string& path) {
  Derivation d;
  std::string rule = str(field(j, "rule", path), path + ".rule");
  auto r = rule_from_name(rule);
  if (!r) throw SerializeError(at(path, "unknown rule \"" + rule + "\""));
  d.rule = *r;
  d.conclusion = parsed(parse_sequent, str(field(j, "conclusion", path), path), path + ".conclusion");
  if (j.contains("witness")) d.witness = parsed(parse_term, str(j["witness"], path), path + ".witness");
  if (j.contains("eigen")) d.eigen = str(j["eigen"], path + ".eigen");
  if (j.contains("cut_formula"))
    d.cut_formula = parsed(parse_formula, str(j["cut_formula"], path), path + ".cut_formula");
  if (j.contains("premises")) {
    const json& ps = j["premises"];
    if (!ps.is_array()) throw SerializeError(at(path, "premises must be an array"));
    for (std::size_t i = 0; i < ps.size(); ++i) d.premises.push_back(untree(ps[i], path + "." + std::to_string(i)));
  }
  return d;
}

json load(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SerializeError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T, class P>
std::optional<T> option(const json& j, const char* key, P parse) {
  if (!j.contains(key)) return std::nullopt;
  std::string s = str(j[key], key);
  auto v = parse(s);
  if (!v) throw SerializeError(std::string("bad value for \"") + key + "\": " + s);
  return v;
}

}  // namespace

std::string write_derivation(const DerivationDocument& doc) {
  json j;
  if (!doc.description.empty()) j["description"] = doc.description;
  if (doc.calculus) j["calculus"] = calculus_flag(*doc.calculus);
  if (doc.eps_mode) j["eps_mode"] = eps_mode_flag(*doc.eps_mode);
  if (doc.succedents) j["succedents"] = succedents_flag(*doc.succedents);
  if (doc.cut_policy) j["cut_policy"] = cut_policy_flag(*doc.cut_policy);
  if (doc.expect) j["expect"] = *doc.expect;
  json t = tree(doc.derivation);
  for (auto& [k, v] : t.items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string write_derivation(const Derivation& d) {
  DerivationDocument doc;
  doc.derivation = d;
  return write_derivation(doc);
}

DerivationDocument read_derivation(const std::string& json_text) {
  json j = load(json_text);
  if (!j.is_object()) throw SerializeError("a derivation must be a JSON object");
  DerivationDocument doc;
  doc.derivation = untree(j, "r");
  doc.calculus = option<Calculus>(j, "calculus", parse_calculus);
  doc.eps_mode = option<EpsMode>(j, "eps_mode", parse_eps_mode);
  doc.succedents = option<Succedents>(j, "succedents", parse_succedents);
  doc.cut_policy = option<CutPolicy>(j, "cut_policy", parse_cut_policy);
  if (j.contains("expect")) doc.expect = str(j["expect"], "expect");
  if (j.contains("description")) doc.description = str(j["description"], "description");
  return doc;
}

std::string write_model(const KripkeModel& m) {
  json j;
  j["flavor"] = m.flavor == Flavor::Term ? "term" : "epsbot";
  j["worlds"] = m.worlds;
  json order = json::array();
  int n = static_cast<int>(m.size());
  for (int w = 0; w < n; ++w)
    for (int v : m.successors(w)) order.push_back({m.worlds[w], m.worlds[v]});
  j["order"] = std::move(order);
  if (!m.element_order.empty()) {
    json es = json::array();
    for (const auto& e : m.element_order) es.push_back(print(e));
    j["elements"] = std::move(es);
  }
  json doms = json::object(), atoms = json::object();
  for (int w = 0; w < n; ++w) {
    json d = json::array(), a = json::array();
    for (const auto& e : m.domains[w]) d.push_back(print(e));
    for (const auto& f : m.atoms[w]) a.push_back(print(f));
    doms[m.worlds[w]] = std::move(d);
    atoms[m.worlds[w]] = std::move(a);
  }
  j["domains"] = std::move(doms);
  j["atoms"] = std::move(atoms);
  if (m.flavor == Flavor::EpsBot) {
    json val = json::object();
    for (int w = 0; w < n; ++w) {
      json vw = json::object();
      if (w < static_cast<int>(m.valuation.size()))
        for (const auto& [k, v] : m.valuation[w]) vw[print(k)] = print(v);
      val[m.worlds[w]] = std::move(vw);
    }
    j["valuation"] = std::move(val);
  }
  json tr = json::array();
  for (const auto& t : m.tracked) tr.push_back(print(t));
  j["tracked"] = std::move(tr);
  return j.dump(2) + "\n";
}

KripkeModel read_model(const std::string& json_text) {
  json j = load(json_text);
  if (!j.is_object()) throw SerializeError("a model must be a JSON object");
  KripkeModel m;
  std::string flavor = str(field(j, "flavor", "model"), "flavor");
  if (flavor == "term") m.flavor = Flavor::Term;
  else if (flavor == "epsbot") m.flavor = Flavor::EpsBot;
  else throw SerializeError("unknown flavor \"" + flavor + "\"");

  const json& ws = field(j, "worlds", "model");
  if (!ws.is_array()) throw SerializeError("worlds must be an array");
  for (const auto& w : ws) {
    std::string name = str(w, "worlds");
    if (m.world_index(name) >= 0) throw SerializeError("duplicate world \"" + name + "\"");
    m.add_world(name);
  }
  auto world = [&](const json& w, const std::string& path) {
    std::string name = str(w, path);
    int i = m.world_index(name);
    if (i < 0) throw SerializeError(at(path, "unknown world \"" + name + "\""));
    return i;
  };
  auto keyed = [&](const char* key, auto each) {
    if (!j.contains(key)) return;
    const json& o = j[key];
    if (!o.is_object()) throw SerializeError(std::string(key) + " must be an object");
    for (auto it = o.begin(); it != o.end(); ++it) each(world(it.key(), key), it.value(), std::string(key) + "." + it.key());
  };

  std::vector<std::pair<int, int>> pairs;
  if (j.contains("order")) {
    for (const auto& p : j["order"]) {
      if (!p.is_array() || p.size() != 2) throw SerializeError("order entries must be pairs");
      pairs.emplace_back(world(p[0], "order"), world(p[1], "order"));
    }
  }
  m.set_order(pairs);
  if (j.contains("elements"))
    for (const auto& e : j["elements"]) m.element_order.push_back(parsed(parse_term, str(e, "elements"), "elements"));
  keyed("domains", [&](int w, const json& v, const std::string& path) {
    for (const auto& e : v) m.domains[w].insert(parsed(parse_term, str(e, path), path));
  });
  keyed("atoms", [&](int w, const json& v, const std::string& path) {
    for (const auto& a : v) {
      Formula f = parsed(parse_formula, str(a, path), path);
      if (!f.is(Kind::Atom)) throw SerializeError(at(path, "not an atom: " + print(f)));
      m.atoms[w].insert(f);
    }
  });
  keyed("valuation", [&](int w, const json& v, const std::string& path) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      Term k = parsed(parse_term, it.key(), path);
      if (!k.is_eps()) throw SerializeError(at(path, "valuation key is not an epsilon-term: " + it.key()));
      m.valuation[w][k] = parsed(parse_term, str(it.value(), path), path);
    }
  });
  if (j.contains("tracked"))
    for (const auto& t : j["tracked"]) m.tracked.insert(parsed(parse_term, str(t, "tracked"), "tracked"));
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SerializeError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SerializeError("cannot write " + path);
  out << content;
  if (!out) throw SerializeError("write failed: " + path);
}

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  static const std::regex expect_re(R"(EXPECT\s+(provable|refutable|unknown)\b)");
  std::vector<CorpusEntry> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string text = line, comment;
    if (auto h = line.find('#'); h != std::string::npos) {
      text = line.substr(0, h);
      comment = line.substr(h + 1);
    }
    auto b = text.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    text = text.substr(b, text.find_last_not_of(" \t\r") - b + 1);
    CorpusEntry e;
    e.text = text;
    e.line = no;
    try {
      e.sequent = parse_sequent(text.find("=>") == std::string::npos ? "=> " + text : text);
    } catch (const ParseError& err) {
      throw SerializeError("line " + std::to_string(no) + ": " + err.what());
    }
    std::smatch mt;
    if (std::regex_search(comment, mt, expect_re)) e.expect = mt[1];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace epsk
