#include "epsk/kernel.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "match.hpp"

namespace epsk {

namespace {

struct RuleInfo {
  Rule rule;
  const char* name;
};

constexpr std::array<RuleInfo, 31> kRules = {{
    {Rule::Ax, "Ax"},         {Rule::AxBot, "AxBot"},   {Rule::AxTop, "AxTop"},
    {Rule::AndR, "AndR"},     {Rule::AndL, "AndL"},     {Rule::OrL, "OrL"},
    {Rule::OrR1, "OrR1"},     {Rule::OrR2, "OrR2"},     {Rule::ImpL, "ImpL"},
    {Rule::ImpR, "ImpR"},     {Rule::AllR, "AllR"},     {Rule::AllL, "AllL"},
    {Rule::ExR, "ExR"},       {Rule::ExLEps, "ExLEps"}, {Rule::ExL, "ExL"},
    {Rule::Cut, "Cut"},       {Rule::Assume, "Assume"}, {Rule::AndI, "AndI"},
    {Rule::AndE1, "AndE1"},   {Rule::AndE2, "AndE2"},   {Rule::OrI1, "OrI1"},
    {Rule::OrI2, "OrI2"},     {Rule::OrE, "OrE"},       {Rule::ImpI, "ImpI"},
    {Rule::ImpE, "ImpE"},     {Rule::BotE, "BotE"},     {Rule::TopI, "TopI"},
    {Rule::AllI, "AllI"},     {Rule::AllEG, "AllEG"},   {Rule::ExIG, "ExIG"},
    {Rule::ExInst, "ExInst"},
}};

}  // namespace

const char* rule_name(Rule r) {
  for (const auto& i : kRules)
    if (i.rule == r) return i.name;
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
  for (const auto& i : kRules)
    if (s == i.name) return i.rule;
  return std::nullopt;
}

bool is_nj_rule(Rule r) { return r >= Rule::Assume; }

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

const char* code_name(ViolationCode c) {
  switch (c) {
    case ViolationCode::MissingDefinednessPremise: return "MissingDefinednessPremise";
    case ViolationCode::EigenvariableViolation: return "EigenvariableViolation";
    case ViolationCode::CutPolicyViolation: return "CutPolicyViolation";
    case ViolationCode::RuleMismatch: return "RuleMismatch";
    case ViolationCode::EpsilonTermInIPC: return "EpsilonTermInIPC";
    case ViolationCode::NJRuleMismatch: return "NJRuleMismatch";
  }
  return "?";
}

bool CheckReport::has(ViolationCode c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.code == c; });
}

Sequent single_goal_form(const Sequent& s) {
  if (!s.succedent.empty()) return s;
  return Sequent(s.antecedent, {Formula::bot()});
}

namespace {

// a \ b is a subset of c
bool diff_within(const FormulaSet& a, const FormulaSet& b, const FormulaSet& c) {
  for (const auto& f : a)
    if (!b.count(f) && !c.count(f)) return false;
  return true;
}

struct Shape {
  FormulaSet add_ante;
  FormulaSet add_succ;
  bool succ_context = true;
};

// Premise i extends a subset of the conclusion context by add_ante / add_succ;
// together the premises cover the conclusion context minus the principal
// formulas. Premises without succedent context have exactly add_succ on the
// right. With `succ_weakening` the conclusion may carry further succedent
// formulas no premise mentions (multiple-succedent ImpR and AllR).
bool shapes_fit(const Sequent& c, const FormulaSet& pr_ante, const FormulaSet& pr_succ,
                const std::vector<Sequent>& ps, const std::vector<Shape>& shapes,
                bool succ_weakening = false) {
  if (ps.size() != shapes.size()) return false;
  FormulaSet ante_union, succ_union;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& p = ps[i];
    const auto& sh = shapes[i];
    if (!diff_within(p.antecedent, c.antecedent, sh.add_ante)) return false;
    ante_union.insert(p.antecedent.begin(), p.antecedent.end());
    if (sh.succ_context) {
      if (!diff_within(p.succedent, c.succedent, sh.add_succ)) return false;
      succ_union.insert(p.succedent.begin(), p.succedent.end());
    } else if (p.succedent != sh.add_succ) {
      return false;
    }
  }
  for (const auto& f : c.antecedent)
    if (!pr_ante.count(f) && !ante_union.count(f)) return false;
  if (succ_weakening) return true;
  for (const auto& f : c.succedent)
    if (!pr_succ.count(f) && !succ_union.count(f)) return false;
  return true;
}

struct Failure {
  ViolationCode code;
  std::string detail;
};

using Outcome = std::optional<Failure>;

Outcome mismatch(std::string why) { return Failure{ViolationCode::RuleMismatch, std::move(why)}; }

bool sequent_has_eps(const Sequent& s) {
  for (const auto& f : s.antecedent)
    if (f.has_eps()) return true;
  for (const auto& f : s.succedent)
    if (f.has_eps()) return true;
  return false;
}

class Checker {
 public:
  explicit Checker(const CalculusConfig& cfg) : cfg_(cfg) {}

  void visit(const Derivation& d, const std::string& path) {
    if (auto f = check_node(d)) report_.violations.push_back({path, f->code, f->detail});
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      visit(d.premises[i], path + "." + std::to_string(i));
  }

  CheckReport take() { return std::move(report_); }

 private:
  bool multi() const { return cfg_.succedents == Succedents::Multiple; }
  bool eps() const { return cfg_.calculus == Calculus::IPCEps; }

  Sequent norm(const Sequent& s) const { return multi() ? s : single_goal_form(s); }

  Outcome check_node(const Derivation& d) {
    if (is_nj_rule(d.rule)) return mismatch(std::string(rule_name(d.rule)) + " is a natural deduction rule");
    Sequent c = norm(d.conclusion);
    std::vector<Sequent> ps;
    for (const auto& p : d.premises) ps.push_back(norm(p.conclusion));
    if (!multi()) {
      if (c.succedent.size() > 1) return mismatch("several succedent formulas in single-succedent mode");
      for (const auto& p : ps)
        if (p.succedent.size() > 1) return mismatch("premise has several succedent formulas");
    }
    if (!eps()) {
      if (sequent_has_eps(d.conclusion))
        return Failure{ViolationCode::EpsilonTermInIPC, "epsilon-term in an IPC sequent"};
      if (d.witness && d.witness->has_eps())
        return Failure{ViolationCode::EpsilonTermInIPC, "epsilon-term as IPC witness"};
    }
    switch (d.rule) {
      case Rule::Ax:
      case Rule::AxBot:
      case Rule::AxTop:
        return axiom(d.rule, c, ps);
      case Rule::AndL:
      case Rule::OrL:
      case Rule::ImpL:
        return propositional_left(d.rule, c, ps);
      case Rule::AndR:
      case Rule::OrR1:
      case Rule::OrR2:
      case Rule::ImpR:
        return propositional_right(d.rule, c, ps);
      case Rule::AllR:
        return forall_right(d, c, ps);
      case Rule::ExL:
        return exists_left_eigen(d, c, ps);
      case Rule::AllL:
      case Rule::ExR:
        return guarded(d, c, ps);
      case Rule::ExLEps:
        return exists_left_eps(c, ps);
      case Rule::Cut:
        return cut(d, c, ps);
      default:
        return mismatch("unknown rule");
    }
  }

  Outcome axiom(Rule r, const Sequent& c, const std::vector<Sequent>& ps) {
    if (!ps.empty()) return mismatch("axiom with premises");
    switch (r) {
      case Rule::Ax:
        for (const auto& f : c.antecedent)
          if (c.succedent.count(f)) return std::nullopt;
        return mismatch("no formula occurs on both sides");
      case Rule::AxBot:
        if (c.antecedent.count(Formula::bot())) return std::nullopt;
        return mismatch("bot not in antecedent");
      default:
        if (c.succedent.count(Formula::top())) return std::nullopt;
        return mismatch("top not in succedent");
    }
  }

  Outcome propositional_left(Rule r, const Sequent& c, const std::vector<Sequent>& ps) {
    Kind want = r == Rule::AndL ? Kind::And : r == Rule::OrL ? Kind::Or : Kind::Imp;
    for (const auto& p : c.antecedent) {
      if (!p.is(want)) continue;
      std::vector<Shape> sh;
      if (r == Rule::AndL) {
        sh = {{{p.left(), p.right()}, {}, true}};
      } else if (r == Rule::OrL) {
        sh = {{{p.left()}, {}, true}, {{p.right()}, {}, true}};
      } else {
        sh = {{{}, {p.left()}, multi()}, {{p.right()}, {}, true}};
      }
      if (shapes_fit(c, {p}, {}, ps, sh)) return std::nullopt;
    }
    return mismatch(std::string("no principal formula fits ") + rule_name(r));
  }

  Outcome propositional_right(Rule r, const Sequent& c, const std::vector<Sequent>& ps) {
    Kind want = r == Rule::AndR ? Kind::And : r == Rule::ImpR ? Kind::Imp : Kind::Or;
    for (const auto& p : c.succedent) {
      if (!p.is(want)) continue;
      std::vector<Shape> sh;
      switch (r) {
        case Rule::AndR:
          sh = {{{}, {p.left()}, multi()}, {{}, {p.right()}, multi()}};
          break;
        case Rule::OrR1:
          sh = {{{}, {p.left()}, multi()}};
          break;
        case Rule::OrR2:
          sh = {{{}, {p.right()}, multi()}};
          break;
        default:
          sh = {{{p.left()}, {p.right()}, false}};
          break;
      }
      if (shapes_fit(c, {}, {p}, ps, sh, r == Rule::ImpR && multi())) return std::nullopt;
    }
    return mismatch(std::string("no principal formula fits ") + rule_name(r));
  }

  // The eigen parameter either given explicitly or read off the premise.
  Outcome forall_right(const Derivation& d, const Sequent& c, const std::vector<Sequent>& ps) {
    if (ps.size() != 1 || ps[0].succedent.size() != 1) return mismatch("AllR needs one premise with one succedent formula");
    const Formula& inst = *ps[0].succedent.begin();
    bool eigen_bad = false;
    for (const auto& p : c.succedent) {
      if (!p.is(Kind::Forall)) continue;
      std::optional<Term> t;
      if (d.eigen) {
        t = Term::param(*d.eigen);
        if (p.instantiate(*t) != inst) continue;
      } else if (!match_instance(p, inst, t) || !t || !t->is_param()) {
        continue;
      }
      if (!shapes_fit(c, {}, {p}, ps, {{{}, {inst}, false}}, multi())) continue;
      if (free_params(d.conclusion).count(t->name())) {
        eigen_bad = true;
        continue;
      }
      return std::nullopt;
    }
    if (eigen_bad) return Failure{ViolationCode::EigenvariableViolation, "eigen parameter occurs in the conclusion"};
    return mismatch("no principal formula fits AllR");
  }

  Outcome exists_left_eigen(const Derivation& d, const Sequent& c, const std::vector<Sequent>& ps) {
    if (eps()) return mismatch("ExL belongs to IPC; use ExLEps");
    if (ps.size() != 1) return mismatch("ExL needs one premise");
    bool eigen_bad = false;
    for (const auto& p : c.antecedent) {
      if (!p.is(Kind::Exists)) continue;
      for (const auto& added : ps[0].antecedent) {
        if (c.antecedent.count(added)) continue;
        std::optional<Term> t;
        if (d.eigen) {
          t = Term::param(*d.eigen);
          if (p.instantiate(*t) != added) continue;
        } else if (!match_instance(p, added, t) || !t || !t->is_param()) {
          continue;
        }
        if (!shapes_fit(c, {p}, {}, ps, {{{added}, {}, true}})) continue;
        if (free_params(d.conclusion).count(t->name())) {
          eigen_bad = true;
          continue;
        }
        return std::nullopt;
      }
      // A premise that repeats an instance already in the conclusion cannot
      // satisfy the eigen condition.
      if (d.eigen && c.antecedent.count(p.instantiate(Term::param(*d.eigen)))) eigen_bad = true;
    }
    if (eigen_bad) return Failure{ViolationCode::EigenvariableViolation, "eigen parameter occurs in the conclusion"};
    return mismatch("no principal formula fits ExL");
  }

  // Candidate instantiation terms for a quantifier, read off the premise when
  // no witness is given.
  std::vector<Term> candidates(const Derivation& d, const Formula& q, const Sequent& main, bool succ) const {
    if (d.witness) return {*d.witness};
    std::vector<Term> out;
    const FormulaSet& side = succ ? main.succedent : main.antecedent;
    for (const auto& f : side) {
      std::optional<Term> t;
      if (match_instance(q, f, t)) {
        if (!t) t = Term::param("_");
        if (std::find(out.begin(), out.end(), *t) == out.end()) out.push_back(*t);
      }
    }
    return out;
  }

  Outcome guarded(const Derivation& d, const Sequent& c, const std::vector<Sequent>& ps) {
    bool left = d.rule == Rule::AllL;
    if (ps.empty() || ps.size() > 2) return mismatch("quantifier rule needs one or two premises");
    if (d.witness && !d.witness->closed()) return mismatch("witness is not a closed term");
    const Sequent& main = ps.back();
    bool missing_guard = false;
    const FormulaSet& side = left ? c.antecedent : c.succedent;
    for (const auto& q : side) {
      if (!q.is(left ? Kind::Forall : Kind::Exists)) continue;
      for (const auto& t : candidates(d, q, main, !left)) {
        Formula inst = q.instantiate(t);
        Shape main_shape = left ? Shape{{inst}, {}, true} : Shape{{}, {inst}, multi()};
        FormulaSet pr_ante = left ? FormulaSet{q} : FormulaSet{};
        FormulaSet pr_succ = left ? FormulaSet{} : FormulaSet{q};
        if (!eps()) {
          if (ps.size() == 1 && shapes_fit(c, pr_ante, pr_succ, ps, {main_shape})) return std::nullopt;
          continue;
        }
        Formula guard = definedness_formula(t);
        if (ps.size() == 1) {
          if (!shapes_fit(c, pr_ante, pr_succ, ps, {main_shape})) continue;
          if (guard.is(Kind::Top)) return std::nullopt;
          missing_guard = true;
          continue;
        }
        Shape guard_shape{{}, {guard}, multi()};
        if (shapes_fit(c, pr_ante, pr_succ, ps, {guard_shape, main_shape})) return std::nullopt;
      }
    }
    if (missing_guard)
      return Failure{ViolationCode::MissingDefinednessPremise,
                     "instantiation at an epsilon-term without a definedness premise"};
    return mismatch(std::string("no principal formula fits ") + rule_name(d.rule));
  }

  Outcome exists_left_eps(const Sequent& c, const std::vector<Sequent>& ps) {
    if (!eps()) return mismatch("ExLEps is not an IPC rule");
    if (ps.size() != 1) return mismatch("ExLEps needs one premise");
    for (const auto& q : c.antecedent) {
      if (!q.is(Kind::Exists)) continue;
      Term e = q.witness();
      FormulaSet added{q.instantiate(e)};
      if (cfg_.eps_mode == EpsMode::Augmented) added.insert(definedness_formula(e));
      if (shapes_fit(c, {q}, {}, ps, {{added, {}, true}})) return std::nullopt;
    }
    return mismatch("no principal formula fits ExLEps");
  }

  Outcome cut(const Derivation& d, const Sequent& c, const std::vector<Sequent>& ps) {
    if (ps.size() != 2) return mismatch("Cut needs two premises");
    std::optional<Formula> x = d.cut_formula;
    if (!x) {
      FormulaSet extra;
      for (const auto& f : ps[1].antecedent)
        if (!c.antecedent.count(f)) extra.insert(f);
      if (extra.size() == 1) {
        x = *extra.begin();
      } else if (!multi() && ps[0].succedent.size() == 1) {
        x = *ps[0].succedent.begin();
      } else {
        return mismatch("cannot determine the cut formula");
      }
    }
    if (!shapes_fit(c, {}, {}, ps, {{{}, {*x}, multi()}, {{*x}, {}, true}}))
      return mismatch("premises do not fit Cut on " + print(*x));
    switch (cfg_.cut_policy) {
      case CutPolicy::AnyCut:
        return std::nullopt;
      case CutPolicy::NoCut:
        return Failure{ViolationCode::CutPolicyViolation, "cuts are not admitted"};
      case CutPolicy::DefinednessCutsOnly:
        for (const auto& e : eps_terms(d.conclusion))
          if (definedness_formula(e) == *x) return std::nullopt;
        return Failure{ViolationCode::CutPolicyViolation,
                       "cut formula " + print(*x) + " is not the definedness formula of an epsilon-term of the conclusion"};
    }
    return std::nullopt;
  }

  CalculusConfig cfg_;
  CheckReport report_;
};

}  // namespace

CheckReport check_derivation(const Derivation& d, const CalculusConfig& cfg) {
  Checker c(cfg);
  c.visit(d, "r");
  return c.take();
}

}  // namespace epsk
