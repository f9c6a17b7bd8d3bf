#include "epsk/search.hpp"

#include <map>

namespace epsk {

SearchConfig SearchConfig::scaled(int k) const {
  SearchConfig c = *this;
  c.instantiation_depth *= k;
  c.eps_nesting *= k;
  c.world_budget *= k;
  c.formula_budget *= k;
  c.step_budget *= k;
  return c;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proof: return "Proof";
    case Verdict::Countermodel: return "Countermodel";
    case Verdict::Exhausted: return "Exhausted";
  }
  return "?";
}

CalculusConfig proof_config(const SearchConfig& cfg) {
  CalculusConfig c;
  c.calculus = cfg.calculus;
  c.eps_mode = cfg.eps_mode;
  c.succedents = Succedents::Multiple;
  c.cut_policy = cfg.cut_policy;
  return c;
}

namespace {

// The term t when f is t-down for an epsilon-term t.
std::optional<Term> defined_term(const Formula& f) {
  if (!f.is(Kind::Exists) || !f.body().is(Kind::Imp)) return std::nullopt;
  Formula inner = f.body().left();
  if (!inner.is(Kind::Exists)) return std::nullopt;
  Term t = Term::eps(inner.name(), inner.body());
  if (!t.closed() || definedness_formula(t) != f) return std::nullopt;
  return t;
}

TermSet decided_terms(const FormulaSet& a, const FormulaSet& b) {
  TermSet out;
  for (const auto* side : {&a, &b})
    for (const auto& f : *side)
      if (auto t = defined_term(f)) out.insert(*t);
  return out;
}

struct State {
  FormulaSet ante, succ;
  TermSet inherited;  // domain of the parent world
  TermSet decide;     // epsilon-terms decided in ancestor worlds
  std::map<Formula, int> uses;
  FormulaSet opened;  // IPC: existentials already given an eigen instance
  int depth = 1;

  Sequent sequent() const { return Sequent(ante, succ); }
};

struct Outcome {
  enum Kind { Closed, Open, Exhausted } kind = Exhausted;
  Derivation proof;
  OpenWorld world;
  std::string why;
};

Outcome exhausted(std::string why) {
  Outcome o;
  o.why = std::move(why);
  return o;
}

Outcome closed(Derivation d) {
  Outcome o;
  o.kind = Outcome::Closed;
  o.proof = std::move(d);
  return o;
}

Derivation node(const Sequent& s, Rule r, std::vector<Derivation> ps = {}) {
  Derivation d;
  d.conclusion = s;
  d.rule = r;
  d.premises = std::move(ps);
  return d;
}

class Engine {
 public:
  Engine(const SearchConfig& cfg, const Sequent& goal, bool successors)
      : cfg_(cfg), successors_(successors), used_(free_params(goal)) {}

  Outcome solve(const State& s) {
    if (++steps_ > cfg_.step_budget) return exhausted("step budget");
    Sequent seq = s.sequent();
    if (auto ax = axiom(seq)) return closed(node(seq, *ax));
    if (static_cast<int>(s.ante.size() + s.succ.size()) > cfg_.formula_budget)
      return exhausted("formula budget");
    Key key{s.ante, s.succ, s.inherited, s.decide};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Outcome o = expand(s, seq);
    if (o.kind != Outcome::Exhausted) memo_.emplace(std::move(key), o);
    return o;
  }

  long steps() const { return steps_; }

 private:
  using Key = std::tuple<FormulaSet, FormulaSet, TermSet, TermSet>;

  bool eps() const { return cfg_.calculus == Calculus::IPCEps; }
  bool augmented() const { return cfg_.eps_mode == EpsMode::Augmented; }

  static std::optional<Rule> axiom(const Sequent& s) {
    if (s.antecedent.count(Formula::bot())) return Rule::AxBot;
    if (s.succedent.count(Formula::top())) return Rule::AxTop;
    for (const auto& f : s.antecedent)
      if (s.succedent.count(f)) return Rule::Ax;
    return std::nullopt;
  }

  TermSet domain(const State& s) {
    TermSet d = s.inherited;
    for (const auto& p : free_params(s.sequent())) d.insert(Term::param(p));
    if (eps())
      for (const auto& f : s.ante)
        if (auto t = defined_term(f)) d.insert(*t);
    if (d.empty()) {
      used_.insert("c");
      d.insert(Term::param("c"));
    }
    return d;
  }

  std::string fresh(const std::string& base) {
    std::string n = fresh_name(base, used_);
    used_.insert(n);
    return n;
  }

  static Outcome unary(const Sequent& seq, Rule r, Outcome o, std::vector<Derivation> before = {}) {
    if (o.kind != Outcome::Closed) return o;
    before.push_back(std::move(o.proof));
    return closed(node(seq, r, std::move(before)));
  }

  // AllL / ExR at t: the guard premise is an axiom since t is in the domain.
  Outcome guarded(const State& s, const Sequent& seq, Rule r, const Term& t, State next) {
    std::vector<Derivation> guard;
    Formula down = definedness_formula(t);
    if (!down.is(Kind::Top)) {
      FormulaSet succ = s.succ;
      succ.insert(down);
      guard.push_back(node(Sequent(s.ante, succ), Rule::Ax));
    }
    Outcome o = unary(seq, r, solve(next), std::move(guard));
    if (o.kind == Outcome::Closed) o.proof.witness = t;
    return o;
  }

  // Both premises must close; the first open one wins.
  Outcome both(const Sequent& seq, Rule r, const State& a, const State& b) {
    Outcome oa = solve(a);
    if (oa.kind == Outcome::Open) return oa;
    Outcome ob = solve(b);
    if (ob.kind == Outcome::Open) return ob;
    if (oa.kind != Outcome::Closed) return oa;
    if (ob.kind != Outcome::Closed) return ob;
    return closed(node(seq, r, {std::move(oa.proof), std::move(ob.proof)}));
  }

  Outcome expand(const State& s, const Sequent& seq) {
    TermSet dom = domain(s);

    for (const auto& f : s.ante) {
      if (!f.is(Kind::And) || (s.ante.count(f.left()) && s.ante.count(f.right()))) continue;
      State t = s;
      t.ante.insert(f.left());
      t.ante.insert(f.right());
      return unary(seq, Rule::AndL, solve(t));
    }

    for (const auto& f : s.ante) {
      if (!f.is(Kind::Exists)) continue;
      if (eps()) {
        Term e = f.witness();
        Formula inst = f.instantiate(e);
        Formula down = definedness_formula(e);
        bool with_down = augmented() && static_cast<int>(e.eps_rank()) <= cfg_.eps_nesting;
        if (s.ante.count(inst) && (!with_down || s.ante.count(down))) continue;
        State t = s;
        t.ante.insert(inst);
        if (with_down) t.ante.insert(down);
        return unary(seq, Rule::ExLEps, solve(t));
      }
      if (s.opened.count(f)) continue;
      std::string b = fresh("a");
      State t = s;
      t.ante.insert(f.instantiate(Term::param(b)));
      t.opened.insert(f);
      Outcome o = unary(seq, Rule::ExL, solve(t));
      if (o.kind == Outcome::Closed) o.proof.eigen = b;
      return o;
    }

    for (const auto& f : s.succ) {
      if (!f.is(Kind::Or)) continue;
      State t = s;
      if (!s.succ.count(f.left())) {
        t.succ.insert(f.left());
        return unary(seq, Rule::OrR1, solve(t));
      }
      if (!s.succ.count(f.right())) {
        t.succ.insert(f.right());
        return unary(seq, Rule::OrR2, solve(t));
      }
    }

    for (const auto& f : s.ante) {
      if (!f.is(Kind::Forall)) continue;
      auto it = s.uses.find(f);
      if (it != s.uses.end() && it->second >= cfg_.instantiation_depth) continue;
      for (const auto& t : dom) {
        Formula inst = f.instantiate(t);
        if (s.ante.count(inst)) continue;
        State n = s;
        n.ante.insert(inst);
        ++n.uses[f];
        return guarded(s, seq, Rule::AllL, t, std::move(n));
      }
    }

    for (const auto& f : s.succ) {
      if (!f.is(Kind::Exists)) continue;
      auto it = s.uses.find(f);
      if (it != s.uses.end() && it->second >= cfg_.instantiation_depth) continue;
      for (const auto& t : dom) {
        Formula inst = f.instantiate(t);
        if (s.succ.count(inst)) continue;
        State n = s;
        n.succ.insert(inst);
        ++n.uses[f];
        return guarded(s, seq, Rule::ExR, t, std::move(n));
      }
    }

    for (const auto& f : s.ante) {
      if (!f.is(Kind::Or) || s.ante.count(f.left()) || s.ante.count(f.right())) continue;
      State a = s, b = s;
      a.ante.insert(f.left());
      b.ante.insert(f.right());
      return both(seq, Rule::OrL, a, b);
    }
    for (const auto& f : s.ante) {
      if (!f.is(Kind::Imp) || s.succ.count(f.left()) || s.ante.count(f.right())) continue;
      State a = s, b = s;
      a.succ.insert(f.left());
      b.ante.insert(f.right());
      return both(seq, Rule::ImpL, a, b);
    }
    for (const auto& f : s.succ) {
      if (!f.is(Kind::And) || s.succ.count(f.left()) || s.succ.count(f.right())) continue;
      State a = s, b = s;
      a.succ.insert(f.left());
      b.succ.insert(f.right());
      return both(seq, Rule::AndR, a, b);
    }

    if (eps()) {
      TermSet occurring = eps_terms(seq);
      TermSet cands = occurring;
      cands.insert(s.decide.begin(), s.decide.end());
      for (const auto& t : cands) {
        if (static_cast<int>(t.eps_rank()) > cfg_.eps_nesting) continue;
        Formula down = definedness_formula(t);
        if (s.ante.count(down) || s.succ.count(down)) continue;
        return decide_definedness(s, seq, down, occurring.count(t) > 0);
      }
    }

    return saturated(s, seq, dom);
  }

  // Antecedent placement first; if both placements close, the two proofs
  // are joined by a cut on the definedness formula.
  Outcome decide_definedness(const State& s, const Sequent& seq, const Formula& down, bool occurs) {
    State in = s, out = s;
    in.ante.insert(down);
    out.succ.insert(down);
    Outcome oa = solve(in);
    if (oa.kind == Outcome::Open) return oa;
    Outcome ob = solve(out);
    if (ob.kind == Outcome::Open) return ob;
    if (oa.kind != Outcome::Closed) return oa;
    if (ob.kind != Outcome::Closed) return ob;
    bool allowed = cfg_.cut_policy == CutPolicy::AnyCut ||
                   (cfg_.cut_policy == CutPolicy::DefinednessCutsOnly && occurs);
    if (!allowed) return exhausted("both placements of " + print(down) + " close but the cut is not admitted");
    Derivation d = node(seq, Rule::Cut, {std::move(ob.proof), std::move(oa.proof)});
    d.cut_formula = down;
    return closed(std::move(d));
  }

  // The world refutes f by itself: A in the antecedent and B in the
  // succedent for A -> B, some instance at a domain term in the succedent
  // for a universal.
  static bool witnessed_here(const State& s, const Formula& f, const TermSet& dom) {
    if (f.is(Kind::Imp)) return s.ante.count(f.left()) && s.succ.count(f.right());
    for (const auto& t : dom)
      if (s.succ.count(f.instantiate(t))) return true;
    return false;
  }

  Outcome saturated(const State& s, const Sequent& seq, const TermSet& dom) {
    Outcome o;
    o.kind = Outcome::Open;
    SaturatedSequent& sat = o.world.sequent;
    sat.antecedent = s.ante;
    sat.succedent = s.succ;
    sat.domain = dom;
    for (const auto* side : {&s.ante, &s.succ}) {
      bool ante = side == &s.ante;
      for (const auto& f : *side) {
        if (!f.is(ante ? Kind::Forall : Kind::Exists)) continue;
        for (const auto& t : dom)
          if (!side->count(f.instantiate(t))) sat.exempt.insert(f);
      }
    }
    if (!successors_) return o;

    TermSet decide = s.decide;
    if (eps())
      for (const auto& t : decided_terms(s.ante, s.succ)) decide.insert(t);
    std::string why;
    for (const auto& f : s.succ) {
      if (!f.is(Kind::Imp) && !f.is(Kind::Forall)) continue;
      if (witnessed_here(s, f, dom)) continue;
      State c;
      c.ante = s.ante;
      c.inherited = dom;
      c.decide = decide;
      c.depth = s.depth + 1;
      std::string b;
      if (f.is(Kind::Imp)) {
        c.ante.insert(f.left());
        c.succ = {f.right()};
      } else {
        b = fresh("b");
        c.succ = {f.instantiate(Term::param(b))};
      }
      if (c.depth > cfg_.world_budget) {
        why = "world budget";
        continue;
      }
      Outcome child = solve(c);
      if (child.kind == Outcome::Closed) {
        Derivation d = node(seq, f.is(Kind::Imp) ? Rule::ImpR : Rule::AllR, {std::move(child.proof)});
        if (!b.empty()) d.eigen = b;
        return closed(std::move(d));
      }
      if (child.kind == Outcome::Open) {
        o.world.children.push_back(std::move(child.world));
      } else {
        why = child.why;
      }
    }
    if (!why.empty()) return exhausted(why);
    return o;
  }

  SearchConfig cfg_;
  bool successors_;
  std::set<std::string> used_;
  long steps_ = 0;
  std::map<Key, Outcome> memo_;
};

bool sequent_has_eps(const Sequent& s) {
  for (const auto* side : {&s.antecedent, &s.succedent})
    for (const auto& f : *side)
      if (f.has_eps()) return true;
  return false;
}

void preorder(const OpenWorld& w, std::vector<const OpenWorld*>& out) {
  out.push_back(&w);
  for (const auto& c : w.children) preorder(c, out);
}

}  // namespace

std::vector<std::string> invertible_closure_violations(const SaturatedSequent& s) {
  std::vector<std::string> out;
  const auto& a = s.antecedent;
  const auto& z = s.succedent;
  auto in = [](const FormulaSet& side, const Formula& f) { return side.count(f) > 0; };
  for (const auto& f : a)
    if (z.count(f)) out.push_back(print(f) + " on both sides");
  for (const auto& f : a) {
    std::string p = print(f);
    switch (f.kind()) {
      case Kind::And:
        if (!in(a, f.left()) || !in(a, f.right())) out.push_back(p + " in antecedent without both conjuncts");
        break;
      case Kind::Imp:
        if (!in(z, f.left()) && !in(a, f.right())) out.push_back(p + " in antecedent, premise not in succedent and conclusion not in antecedent");
        break;
      case Kind::Or:
        if (!in(a, f.left()) && !in(a, f.right())) out.push_back(p + " in antecedent without a disjunct");
        break;
      case Kind::Forall:
        if (s.exempt.count(f)) break;
        for (const auto& t : s.domain)
          if (!in(a, f.instantiate(t))) out.push_back(p + " in antecedent not instantiated at " + print(t));
        break;
      case Kind::Exists:
        if (!in(a, f.instantiate(f.witness()))) out.push_back(p + " in antecedent without its epsilon instance");
        break;
      default:
        break;
    }
  }
  for (const auto& f : z) {
    std::string p = print(f);
    switch (f.kind()) {
      case Kind::Or:
        if (!in(z, f.left()) || !in(z, f.right())) out.push_back(p + " in succedent without both disjuncts");
        break;
      case Kind::And:
        if (!in(z, f.left()) && !in(z, f.right())) out.push_back(p + " in succedent without a conjunct");
        break;
      case Kind::Exists:
        if (s.exempt.count(f)) break;
        for (const auto& t : s.domain)
          if (!in(z, f.instantiate(t))) out.push_back(p + " in succedent not instantiated at " + print(t));
        break;
      default:
        break;
    }
  }
  return out;
}

SaturationResult saturate(const Sequent& s, const SearchConfig& cfg) {
  SaturationResult r;
  if (cfg.calculus == Calculus::IPC && sequent_has_eps(s)) {
    r.diagnostic = "epsilon-term in an IPC sequent";
    return r;
  }
  Engine e(cfg, s, false);
  State st;
  st.ante = s.antecedent;
  st.succ = s.succedent;
  Outcome o = e.solve(st);
  switch (o.kind) {
    case Outcome::Closed: {
      CheckReport rep = check_derivation(o.proof, proof_config(cfg));
      if (!rep.ok()) {
        r.diagnostic = "proof rejected by the kernel: " + rep.violations.front().detail;
        return r;
      }
      r.kind = SaturationResult::Closed;
      r.proof = std::move(o.proof);
      break;
    }
    case Outcome::Open:
      r.kind = SaturationResult::Open;
      r.sequent = std::move(o.world.sequent);
      break;
    case Outcome::Exhausted:
      r.diagnostic = o.why;
      break;
  }
  return r;
}

std::optional<KripkeModel> build_countermodel(const OpenWorld& root, Calculus calculus, std::string* why) {
  std::vector<const OpenWorld*> ws;
  preorder(root, ws);
  KripkeModel m;
  m.flavor = Flavor::Term;
  std::map<const OpenWorld*, int> index;
  for (const auto* w : ws) {
    FormulaSet atoms;
    for (const auto& f : w->sequent.antecedent)
      if (f.is(Kind::Atom)) atoms.insert(f);
    index[w] = m.add_world("w" + std::to_string(m.size()), w->sequent.domain, atoms);
    if (calculus == Calculus::IPCEps)
      for (const auto& t : decided_terms(w->sequent.antecedent, w->sequent.succedent)) m.tracked.insert(t);
  }
  m.tracked = close_tracked(m.tracked);
  std::vector<std::pair<int, int>> edges;
  for (const auto* w : ws)
    for (const auto& c : w->children) edges.push_back({index[w], index[&c]});
  m.set_order(edges);

  auto fail = [&](std::string msg) -> std::optional<KripkeModel> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  ValidationReport rep = validate_model(m);
  if (!rep.ok()) {
    const auto& p = rep.problems.front();
    return fail(std::string("model invalid: ") + issue_name(p.issue) + " at " + p.world + ": " + p.detail);
  }
  Evaluator ev(m);
  try {
    for (const auto* w : ws) {
      int i = index[w];
      for (const auto& f : w->sequent.antecedent)
        if (!ev.forces(i, f)) return fail("truth audit: " + m.worlds[i] + " does not force antecedent formula " + print(f));
      for (const auto& f : w->sequent.succedent)
        if (ev.forces(i, f)) return fail("truth audit: " + m.worlds[i] + " forces succedent formula " + print(f));
    }
  } catch (const std::exception& ex) {
    return fail(std::string("truth audit: ") + ex.what());
  }
  return m;
}

SearchResult decide(const Sequent& s, const SearchConfig& cfg) {
  SearchResult r;
  if (cfg.calculus == Calculus::IPC && sequent_has_eps(s)) {
    r.diagnostic = "epsilon-term in an IPC sequent";
    return r;
  }
  Engine e(cfg, s, true);
  State st;
  st.ante = s.antecedent;
  st.succ = s.succedent;
  Outcome o = e.solve(st);
  r.steps = e.steps();
  switch (o.kind) {
    case Outcome::Closed: {
      CheckReport rep = check_derivation(o.proof, proof_config(cfg));
      if (!rep.ok()) {
        const auto& v = rep.violations.front();
        r.diagnostic = "proof rejected by the kernel at " + v.path + ": " + v.detail;
        return r;
      }
      r.verdict = Verdict::Proof;
      r.proof = std::move(o.proof);
      return r;
    }
    case Outcome::Open: {
      std::string why;
      auto m = build_countermodel(o.world, cfg.calculus, &why);
      if (!m) {
        r.diagnostic = why;
        return r;
      }
      Evaluator ev(*m);
      auto refuting = ev.refuting_worlds(s);
      if (refuting.empty() || refuting.front() != 0) {
        r.diagnostic = "model does not refute the sequent at its root";
        return r;
      }
      std::vector<const OpenWorld*> ws;
      preorder(o.world, ws);
      for (const auto* w : ws) r.worlds.push_back(w->sequent);
      r.verdict = Verdict::Countermodel;
      r.model = std::move(m);
      r.refuting_world = 0;
      return r;
    }
    case Outcome::Exhausted:
      r.diagnostic = o.why.empty() ? "bounds exhausted" : o.why;
      return r;
  }
  return r;
}

}  // namespace epsk
