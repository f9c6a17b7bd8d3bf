#include "epsk/natded.hpp"

#include "match.hpp"

namespace epsk {

namespace {

Formula goal_of(const Sequent& s) { return *single_goal_form(s).succedent.begin(); }

Derivation make(FormulaSet ante, const Formula& goal, Rule r, std::vector<Derivation> ps = {}) {
  Derivation d;
  d.conclusion = Sequent(std::move(ante), {goal});
  d.rule = r;
  d.premises = std::move(ps);
  return d;
}

FormulaSet minus(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  for (const auto& f : a)
    if (!b.count(f)) out.insert(f);
  return out;
}

FormulaSet join(FormulaSet a, const FormulaSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

bool subset(const FormulaSet& a, const FormulaSet& b) {
  for (const auto& f : a)
    if (!b.count(f)) return false;
  return true;
}

const FormulaSet& ante(const Derivation& d) { return d.conclusion.antecedent; }

std::string first_violation(const CheckReport& r) {
  const auto& v = r.violations.front();
  return v.path + ": " + code_name(v.code) + " (" + v.detail + ")";
}

CalculusConfig seq_config(EpsMode mode) {
  CalculusConfig cfg;
  cfg.calculus = Calculus::IPCEps;
  cfg.eps_mode = mode;
  cfg.succedents = Succedents::Single;
  cfg.cut_policy = CutPolicy::AnyCut;
  return cfg;
}

// The instantiation term of q in `inst`, preferring an explicit witness.
std::optional<Term> instance_term(const std::optional<Term>& witness, const Formula& q, const Formula& inst) {
  if (witness) return q.instantiate(*witness) == inst ? witness : std::nullopt;
  std::optional<Term> t;
  if (!match_instance(q, inst, t)) return std::nullopt;
  return t ? t : Term::param("_");
}

// ---------------------------------------------------------------- NJ -> seq

class ToSeq {
 public:
  Derivation run(const NJDerivation& d) {
    FormulaSet c = d.conclusion.antecedent;
    Formula g = goal_of(d.conclusion);
    std::vector<Derivation> ps;
    for (const auto& p : d.premises) ps.push_back(run(p));

    switch (d.rule) {
      case Rule::Assume:
        return make(c, g, Rule::Ax);
      case Rule::TopI:
        return make(c, g, Rule::AxTop);
      case Rule::AndI:
        return make(c, g, Rule::AndR, std::move(ps));
      case Rule::OrI1:
        return make(c, g, Rule::OrR1, std::move(ps));
      case Rule::OrI2:
        return make(c, g, Rule::OrR2, std::move(ps));
      case Rule::ImpI:
        return make(c, g, Rule::ImpR, std::move(ps));
      case Rule::AllI: {
        Derivation out = make(c, g, Rule::AllR, std::move(ps));
        out.eigen = d.eigen;
        return out;
      }
      case Rule::ExIG: {
        Derivation out = make(c, g, Rule::ExR, std::move(ps));
        out.witness = d.witness;
        return out;
      }
      default:
        return elimination(d, c, g, std::move(ps));
    }
  }

 private:
  // An elimination becomes a cut on its major premise X against a left rule
  // for X. The left rule's context is X plus whatever of the conclusion the
  // major premise does not supply, plus the minor premises' own context, so
  // a bare major premise reproduces the textbook display.
  Derivation elimination(const NJDerivation& d, const FormulaSet& c, const Formula& g,
                         std::vector<Derivation> ps) {
    std::size_t major = d.rule == Rule::AllEG ? ps.size() - 1 : 0;
    Derivation s0 = std::move(ps[major]);
    Formula x = goal_of(s0.conclusion);
    std::vector<Derivation> minors;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (i != major) minors.push_back(std::move(ps[i]));

    FormulaSet rest = minus(c, ante(s0));
    if (d.rule == Rule::OrE) {
      rest = join(rest, minus(ante(minors[0]), {x.left()}));
      rest = join(rest, minus(ante(minors[1]), {x.right()}));
    } else {
      for (const auto& m : minors) rest = join(rest, ante(m));
    }
    FormulaSet lante = join(rest, {x});
    auto leaf = [&](const Formula& added) {
      return make(join(rest, {added}), added, Rule::Ax);
    };

    Derivation left;
    switch (d.rule) {
      case Rule::AndE1:
        left = make(lante, g, Rule::AndL, {leaf(x.left())});
        break;
      case Rule::AndE2:
        left = make(lante, g, Rule::AndL, {leaf(x.right())});
        break;
      case Rule::ImpE:
        left = make(lante, g, Rule::ImpL, {std::move(minors[0]), leaf(x.right())});
        break;
      case Rule::OrE:
        left = make(lante, g, Rule::OrL, {std::move(minors[0]), std::move(minors[1])});
        break;
      case Rule::BotE:
        left = make(lante, g, Rule::AxBot);
        break;
      case Rule::AllEG: {
        std::vector<Derivation> lp = std::move(minors);
        lp.push_back(leaf(g));
        left = make(lante, g, Rule::AllL, std::move(lp));
        left.witness = instance_term(d.witness, x, g);
        break;
      }
      case Rule::ExInst:
        left = make(lante, g, Rule::ExLEps, {leaf(g)});
        break;
      default:
        throw TranslationError(std::string("no sequent counterpart for ") + rule_name(d.rule));
    }
    Derivation cut = make(c, g, Rule::Cut, {std::move(s0), std::move(left)});
    cut.cut_formula = x;
    return cut;
  }
};

// ---------------------------------------------------------------- seq -> NJ

class ToNJ {
 public:
  explicit ToNJ(EpsMode mode) : mode_(mode) {}

  NJDerivation run(const Derivation& d) {
    FormulaSet c = d.conclusion.antecedent;
    Formula g = goal_of(d.conclusion);
    std::vector<NJDerivation> ts;
    for (const auto& p : d.premises) ts.push_back(run(p));

    switch (d.rule) {
      case Rule::Ax:
        return make(c, g, Rule::Assume);
      case Rule::AxTop:
        return make(c, g, Rule::TopI);
      case Rule::AxBot:
        if (g.is(Kind::Bot)) return make(c, g, Rule::Assume);
        return make(c, g, Rule::BotE, {make(c, Formula::bot(), Rule::Assume)});
      case Rule::AndR: {
        FormulaSet a = join(ante(ts[0]), ante(ts[1]));
        return weaken(make(a, g, Rule::AndI, std::move(ts)), c);
      }
      case Rule::OrR1:
      case Rule::OrR2: {
        FormulaSet a = ante(ts[0]);
        return weaken(make(a, g, d.rule == Rule::OrR1 ? Rule::OrI1 : Rule::OrI2, std::move(ts)), c);
      }
      case Rule::ImpR: {
        FormulaSet a = minus(ante(ts[0]), {g.left()});
        return weaken(make(a, g, Rule::ImpI, std::move(ts)), c);
      }
      case Rule::AllR: {
        FormulaSet a = ante(ts[0]);
        NJDerivation out = make(a, g, Rule::AllI, std::move(ts));
        out.eigen = d.eigen;
        return weaken(std::move(out), c);
      }
      case Rule::ExR: {
        FormulaSet a;
        for (const auto& t : ts) a = join(a, ante(t));
        auto t = instance_term(d.witness, g, goal_of(ts.back().conclusion));
        NJDerivation out = make(a, g, Rule::ExIG, std::move(ts));
        out.witness = t;
        return weaken(std::move(out), c);
      }
      case Rule::AndL:
        return and_left(c, std::move(ts[0]));
      case Rule::OrL:
        return or_left(c, g, std::move(ts));
      case Rule::ImpL:
        return imp_left(c, std::move(ts));
      case Rule::AllL:
        return all_left(d, c, std::move(ts));
      case Rule::ExLEps:
        return exists_left(c, std::move(ts[0]));
      case Rule::Cut: {
        Formula x = goal_of(ts[0].conclusion);
        return weaken(discharge(std::move(ts[1]), x, std::move(ts[0])), c);
      }
      case Rule::ExL:
        throw TranslationError("ExL has no natural deduction counterpart with epsilon; use ExLEps");
      default:
        throw TranslationError(std::string("not a sequent rule: ") + rule_name(d.rule));
    }
  }

 private:
  static NJDerivation assume(const Formula& f) { return make({f}, f, Rule::Assume); }

  // From T: Gamma => X with Gamma within c, the same goal under c.
  static NJDerivation weaken(NJDerivation t, const FormulaSet& c) {
    if (ante(t) == c) return t;
    if (!subset(ante(t), c)) throw TranslationError("context escapes the conclusion");
    Formula x = goal_of(t.conclusion);
    Formula both = Formula::conj(x, Formula::top());
    NJDerivation intro = make(c, both, Rule::AndI, {std::move(t), make(c, Formula::top(), Rule::TopI)});
    return make(c, x, Rule::AndE1, {std::move(intro)});
  }

  // From T: Gamma => G and U: Delta => X, a derivation of G from
  // (Gamma - X) + Delta, composing ImpI and ImpE.
  static NJDerivation discharge(NJDerivation t, const Formula& x, NJDerivation u) {
    if (!ante(t).count(x)) return t;
    Formula g = goal_of(t.conclusion);
    FormulaSet rest = minus(ante(t), {x});
    FormulaSet all = join(rest, ante(u));
    NJDerivation intro = make(rest, Formula::imp(x, g), Rule::ImpI, {std::move(t)});
    return make(all, g, Rule::ImpE, {std::move(intro), std::move(u)});
  }

  NJDerivation and_left(const FormulaSet& c, NJDerivation t) {
    FormulaSet extra = minus(ante(t), c);
    if (extra.empty()) return weaken(std::move(t), c);
    for (const auto& p : c) {
      if (!p.is(Kind::And) || !subset(extra, {p.left(), p.right()})) continue;
      if (extra.count(p.left()))
        t = discharge(std::move(t), p.left(), make({p}, p.left(), Rule::AndE1, {assume(p)}));
      if (extra.count(p.right()))
        t = discharge(std::move(t), p.right(), make({p}, p.right(), Rule::AndE2, {assume(p)}));
      return weaken(std::move(t), c);
    }
    throw TranslationError("no principal formula for AndL");
  }

  NJDerivation or_left(const FormulaSet& c, const Formula& g, std::vector<NJDerivation> ts) {
    FormulaSet e1 = minus(ante(ts[0]), c), e2 = minus(ante(ts[1]), c);
    if (e1.empty()) return weaken(std::move(ts[0]), c);
    if (e2.empty()) return weaken(std::move(ts[1]), c);
    for (const auto& p : c) {
      if (!p.is(Kind::Or) || !subset(e1, {p.left()}) || !subset(e2, {p.right()})) continue;
      FormulaSet a = join(join({p}, minus(ante(ts[0]), {p.left()})), minus(ante(ts[1]), {p.right()}));
      return weaken(make(a, g, Rule::OrE, {assume(p), std::move(ts[0]), std::move(ts[1])}), c);
    }
    throw TranslationError("no principal formula for OrL");
  }

  NJDerivation imp_left(const FormulaSet& c, std::vector<NJDerivation> ts) {
    FormulaSet extra = minus(ante(ts[1]), c);
    if (extra.empty()) return weaken(std::move(ts[1]), c);
    Formula a = goal_of(ts[0].conclusion);
    for (const auto& p : c) {
      if (!p.is(Kind::Imp) || p.left() != a || !subset(extra, {p.right()})) continue;
      FormulaSet ua = join({p}, ante(ts[0]));
      NJDerivation u = make(ua, p.right(), Rule::ImpE, {assume(p), std::move(ts[0])});
      return weaken(discharge(std::move(ts[1]), p.right(), std::move(u)), c);
    }
    throw TranslationError("no principal formula for ImpL");
  }

  NJDerivation all_left(const Derivation& d, const FormulaSet& c, std::vector<NJDerivation> ts) {
    NJDerivation main = std::move(ts.back());
    ts.pop_back();
    FormulaSet extra = minus(ante(main), c);
    if (extra.empty()) return weaken(std::move(main), c);
    if (extra.size() != 1) throw TranslationError("AllL premise adds several formulas");
    Formula inst = *extra.begin();
    for (const auto& p : c) {
      if (!p.is(Kind::Forall)) continue;
      auto t = instance_term(d.witness, p, inst);
      if (!t) continue;
      FormulaSet ua{p};
      for (const auto& g : ts) ua = join(ua, ante(g));
      ts.push_back(assume(p));
      NJDerivation u = make(ua, inst, Rule::AllEG, std::move(ts));
      u.witness = t;
      return weaken(discharge(std::move(main), inst, std::move(u)), c);
    }
    throw TranslationError("no principal formula for AllL");
  }

  NJDerivation exists_left(const FormulaSet& c, NJDerivation t) {
    FormulaSet extra = minus(ante(t), c);
    if (extra.empty()) return weaken(std::move(t), c);
    for (const auto& p : c) {
      if (!p.is(Kind::Exists)) continue;
      Term e = p.witness();
      Formula inst = p.instantiate(e);
      Formula down = definedness_formula(e);
      FormulaSet allowed{inst};
      if (mode_ == EpsMode::Augmented) allowed.insert(down);
      if (!subset(extra, allowed)) continue;
      if (extra.count(inst))
        t = discharge(std::move(t), inst, make({p}, inst, Rule::ExInst, {assume(p)}));
      if (extra.count(down) && down != inst)
        t = discharge(std::move(t), down, make({p}, down, Rule::ExInst, {assume(p)}));
      return weaken(std::move(t), c);
    }
    throw TranslationError("no principal formula for ExLEps");
  }

  EpsMode mode_;
};

}  // namespace

Derivation nj_to_seq(const NJDerivation& d, EpsMode mode) {
  CheckReport in = check_nj(d, mode);
  if (!in.ok()) throw TranslationError("InputUnchecked: " + first_violation(in));
  Derivation out = ToSeq().run(d);
  out.conclusion = d.conclusion;
  CheckReport res = check_derivation(out, seq_config(mode));
  if (!res.ok()) throw TranslationError("translation produced an invalid derivation: " + first_violation(res));
  return out;
}

NJDerivation seq_to_nj(const Derivation& d, EpsMode mode) {
  CheckReport in = check_derivation(d, seq_config(mode));
  if (!in.ok()) throw TranslationError("InputUnchecked: " + first_violation(in));
  NJDerivation out = ToNJ(mode).run(d);
  out.conclusion = d.conclusion;
  CheckReport res = check_nj(out, mode);
  if (!res.ok()) throw TranslationError("translation produced an invalid derivation: " + first_violation(res));
  return out;
}

}  // namespace epsk
