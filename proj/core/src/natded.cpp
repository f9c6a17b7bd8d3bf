#include "epsk/natded.hpp"

#include "match.hpp"

namespace epsk {

namespace {

struct Failure {
  ViolationCode code;
  std::string detail;
};

using Outcome = std::optional<Failure>;

Outcome mismatch(std::string why) { return Failure{ViolationCode::NJRuleMismatch, std::move(why)}; }

struct Premise {
  FormulaSet discharged;
  Formula goal;
};

Formula goal_of(const Sequent& s) { return *s.succedent.begin(); }

bool fits(const Sequent& c, const std::vector<Sequent>& ps, const std::vector<Premise>& shape) {
  if (ps.size() != shape.size()) return false;
  FormulaSet covered;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (goal_of(ps[i]) != shape[i].goal) return false;
    for (const auto& f : ps[i].antecedent) {
      if (!c.antecedent.count(f) && !shape[i].discharged.count(f)) return false;
      covered.insert(f);
    }
  }
  for (const auto& f : c.antecedent)
    if (!covered.count(f)) return false;
  return true;
}

class NJChecker {
 public:
  explicit NJChecker(EpsMode mode) : mode_(mode) {}

  void visit(const NJDerivation& d, const std::string& path) {
    if (auto f = check_node(d)) report_.violations.push_back({path, f->code, f->detail});
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      visit(d.premises[i], path + "." + std::to_string(i));
  }

  CheckReport take() { return std::move(report_); }

 private:
  Outcome check_node(const NJDerivation& d) {
    if (!is_nj_rule(d.rule)) return mismatch(std::string(rule_name(d.rule)) + " is a sequent calculus rule");
    Sequent c = single_goal_form(d.conclusion);
    if (c.succedent.size() != 1) return mismatch("natural deduction sequents have one succedent formula");
    std::vector<Sequent> ps;
    for (const auto& p : d.premises) {
      ps.push_back(single_goal_form(p.conclusion));
      if (ps.back().succedent.size() != 1) return mismatch("premise has several succedent formulas");
    }
    Formula g = goal_of(c);
    auto need = [&](std::size_t n) { return ps.size() == n; };
    switch (d.rule) {
      case Rule::Assume:
        if (need(0) && c.antecedent.count(g)) return std::nullopt;
        return mismatch("goal is not an assumption");
      case Rule::TopI:
        if (need(0) && g.is(Kind::Top)) return std::nullopt;
        return mismatch("TopI concludes top");
      case Rule::AndI:
        if (g.is(Kind::And) && fits(c, ps, {{{}, g.left()}, {{}, g.right()}})) return std::nullopt;
        return mismatch("premises do not fit AndI");
      case Rule::AndE1:
      case Rule::AndE2: {
        if (!need(1)) return mismatch("AndE needs one premise");
        Formula x = goal_of(ps[0]);
        bool first = d.rule == Rule::AndE1;
        if (x.is(Kind::And) && (first ? x.left() : x.right()) == g && fits(c, ps, {{{}, x}}))
          return std::nullopt;
        return mismatch("premise does not fit AndE");
      }
      case Rule::OrI1:
      case Rule::OrI2:
        if (g.is(Kind::Or) &&
            fits(c, ps, {{{}, d.rule == Rule::OrI1 ? g.left() : g.right()}}))
          return std::nullopt;
        return mismatch("premise does not fit OrI");
      case Rule::OrE: {
        if (!need(3)) return mismatch("OrE needs three premises");
        Formula x = goal_of(ps[0]);
        if (x.is(Kind::Or) && fits(c, ps, {{{}, x}, {{x.left()}, g}, {{x.right()}, g}}))
          return std::nullopt;
        return mismatch("premises do not fit OrE");
      }
      case Rule::ImpI:
        if (g.is(Kind::Imp) && fits(c, ps, {{{g.left()}, g.right()}})) return std::nullopt;
        return mismatch("premise does not fit ImpI");
      case Rule::ImpE: {
        if (!need(2)) return mismatch("ImpE needs two premises");
        Formula x = goal_of(ps[0]);
        if (x.is(Kind::Imp) && x.right() == g && fits(c, ps, {{{}, x}, {{}, x.left()}}))
          return std::nullopt;
        return mismatch("premises do not fit ImpE");
      }
      case Rule::BotE:
        if (fits(c, ps, {{{}, Formula::bot()}})) return std::nullopt;
        return mismatch("premise does not fit BotE");
      case Rule::AllI:
        return all_intro(d, c, ps, g);
      case Rule::AllEG:
      case Rule::ExIG:
        return guarded(d, c, ps, g);
      case Rule::ExInst: {
        if (!need(1)) return mismatch("ExInst needs one premise");
        Formula x = goal_of(ps[0]);
        if (!x.is(Kind::Exists) || !fits(c, ps, {{{}, x}})) return mismatch("premise does not fit ExInst");
        Term e = x.witness();
        if (g == x.instantiate(e)) return std::nullopt;
        if (mode_ == EpsMode::Augmented && g == definedness_formula(e)) return std::nullopt;
        return mismatch("ExInst concludes F(eps x. F)");
      }
      default:
        return mismatch("unknown rule");
    }
  }

  Outcome all_intro(const NJDerivation& d, const Sequent& c, const std::vector<Sequent>& ps, const Formula& g) {
    if (!g.is(Kind::Forall) || ps.size() != 1) return mismatch("AllI concludes a universal from one premise");
    Formula inst = goal_of(ps[0]);
    std::optional<Term> b;
    if (d.eigen) {
      b = Term::param(*d.eigen);
      if (g.instantiate(*b) != inst) return mismatch("premise is not the eigen instance");
    } else if (!match_instance(g, inst, b) || !b || !b->is_param()) {
      return mismatch("premise is not a parameter instance");
    }
    if (!fits(c, ps, {{{}, inst}})) return mismatch("premise does not fit AllI");
    if (free_params(d.conclusion).count(b->name()))
      return Failure{ViolationCode::EigenvariableViolation, "eigen parameter occurs in the conclusion"};
    return std::nullopt;
  }

  Outcome guarded(const NJDerivation& d, const Sequent& c, const std::vector<Sequent>& ps, const Formula& g) {
    bool elim = d.rule == Rule::AllEG;
    if (ps.empty() || ps.size() > 2) return mismatch("guarded quantifier rule needs one or two premises");
    Formula main = goal_of(ps.back());
    Formula q = elim ? main : g;
    Formula inst = elim ? g : main;
    if (!q.is(elim ? Kind::Forall : Kind::Exists)) return mismatch("quantifier of the wrong kind");
    std::optional<Term> t = d.witness;
    if (t) {
      if (!t->closed() || q.instantiate(*t) != inst) return mismatch("witness does not produce the instance");
    } else {
      if (!match_instance(q, inst, t)) return mismatch("not an instance of the quantifier");
      if (!t) t = Term::param("_");
    }
    Formula guard = definedness_formula(*t);
    Premise main_shape{{}, main};
    if (ps.size() == 1) {
      if (!fits(c, ps, {main_shape})) return mismatch("premise does not fit");
      if (guard.is(Kind::Top)) return std::nullopt;
      return Failure{ViolationCode::MissingDefinednessPremise,
                     "instantiation at an epsilon-term without a definedness premise"};
    }
    if (fits(c, ps, {{{}, guard}, main_shape})) return std::nullopt;
    return mismatch("premises do not fit");
  }

  EpsMode mode_;
  CheckReport report_;
};

}  // namespace

CheckReport check_nj(const NJDerivation& d, EpsMode mode) {
  NJChecker c(mode);
  c.visit(d, "r");
  return c.take();
}

}  // namespace epsk
