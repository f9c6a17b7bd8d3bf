#pragma once

// JSON files for derivations and models, and the line-based sequent corpus.
// Output is deterministic: keys in a fixed order, sets in term order.

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsk/kernel.hpp"
#include "epsk/semantics.hpp"

namespace epsk {

class SerializeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* calculus_flag(Calculus c);    // "ipc", "ipce"
const char* eps_mode_flag(EpsMode m);     // "literal", "augmented"
const char* succedents_flag(Succedents s);  // "single", "multiple"
const char* cut_policy_flag(CutPolicy p);  // "any", "definedness-only", "none"

std::optional<Calculus> parse_calculus(const std::string& s);
std::optional<EpsMode> parse_eps_mode(const std::string& s);
std::optional<Succedents> parse_succedents(const std::string& s);
std::optional<CutPolicy> parse_cut_policy(const std::string& s);

// A derivation file. The top-level object may carry the configuration it is
// meant to be checked under and the expected outcome ("ok" or a violation
// code); premises are nested trees without these keys.
struct DerivationDocument {
  Derivation derivation;
  std::optional<Calculus> calculus;
  std::optional<EpsMode> eps_mode;
  std::optional<Succedents> succedents;
  std::optional<CutPolicy> cut_policy;
  std::optional<std::string> expect;
  std::string description;

  // `base` overridden by the fields that are present.
  CalculusConfig config(CalculusConfig base = {}) const;
};

std::string write_derivation(const DerivationDocument& doc);
std::string write_derivation(const Derivation& d);
DerivationDocument read_derivation(const std::string& json_text);

// Order is written as immediate pairs; reading takes the closure.
std::string write_model(const KripkeModel& m);
KripkeModel read_model(const std::string& json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// One sequent per line. `#` starts a comment; a comment of the form
// `EXPECT provable|refutable|unknown` annotates the sequent on its line.
struct CorpusEntry {
  Sequent sequent;
  std::string text;
  std::optional<std::string> expect;
  int line = 0;
};

std::vector<CorpusEntry> parse_corpus(std::istream& in);

}  // namespace epsk
