#include "epsk/kernel.hpp"
#include "match.hpp"

namespace epsk {

namespace {

bool match_at(const NodePtr& pat, const NodePtr& tgt, unsigned depth, std::optional<Term>& t) {
  if (pat->loose <= depth) return compare_nodes(pat, tgt) == 0;
  if (pat->kind == Kind::Bound && pat->index == depth) {
    if (tgt->loose != 0) return false;
    Term cand(tgt);
    if (t) return *t == cand;
    t = cand;
    return true;
  }
  if (pat->kind != tgt->kind || pat->children.size() != tgt->children.size()) return false;
  if ((pat->kind == Kind::Atom || pat->kind == Kind::Param) && pat->name != tgt->name) return false;
  if (pat->kind == Kind::Bound) return pat->index == tgt->index + 1;
  bool binder = pat->kind == Kind::Eps || pat->kind == Kind::Forall || pat->kind == Kind::Exists;
  for (std::size_t i = 0; i < pat->children.size(); ++i)
    if (!match_at(pat->children[i], tgt->children[i], binder ? depth + 1 : depth, t)) return false;
  return true;
}

Derivation leaf(Sequent s, Rule r = Rule::Ax) {
  Derivation d;
  d.conclusion = std::move(s);
  d.rule = r;
  return d;
}

Derivation node(Sequent s, Rule r, std::vector<Derivation> ps) {
  Derivation d;
  d.conclusion = std::move(s);
  d.rule = r;
  d.premises = std::move(ps);
  return d;
}

}  // namespace

bool match_instance(const Formula& q, const Formula& target, std::optional<Term>& t) {
  t.reset();
  if (!q.is_quantifier()) return false;
  return match_at(q.body().node(), target.node(), 0, t);
}

const char* schema_name(HilbertSchema s) {
  switch (s) {
    case HilbertSchema::EpsQ1: return "EpsQ1";
    case HilbertSchema::EpsQ2: return "EpsQ2";
    case HilbertSchema::Critical: return "Critical";
    case HilbertSchema::None: return "None";
  }
  return "?";
}

Formula hilbert_axiom(const HilbertInstance& inst) {
  const Formula& q = inst.quantified;
  switch (inst.schema) {
    case HilbertSchema::EpsQ1:
      return Formula::imp(Formula::conj(definedness_formula(inst.term), q), q.instantiate(inst.term));
    case HilbertSchema::EpsQ2:
      return Formula::imp(Formula::conj(definedness_formula(inst.term), q.instantiate(inst.term)), q);
    case HilbertSchema::Critical:
      return Formula::imp(q, q.instantiate(q.witness()));
    case HilbertSchema::None:
      break;
  }
  throw InvalidInstantiation("no schema");
}

HilbertInstance recognize_hilbert_axiom(const Formula& f) {
  HilbertInstance none;
  if (!f.is(Kind::Imp)) return none;
  Formula lhs = f.left(), rhs = f.right();

  if (lhs.is(Kind::Exists) && rhs == lhs.instantiate(lhs.witness()))
    return {HilbertSchema::Critical, lhs, lhs.witness()};

  if (!lhs.is(Kind::And)) return none;
  Formula guard = lhs.left();
  // The term whose definedness formula `guard` is; parameters are all
  // defined, so a top guard fixes no particular term.
  std::optional<Term> from_guard;
  bool guard_is_top = guard.is(Kind::Top);
  if (!guard_is_top) {
    if (!guard.is(Kind::Exists) || !guard.body().is(Kind::Imp) || !guard.body().left().is(Kind::Exists))
      return none;
    Term cand = Term::eps(guard.body().left().name(), guard.body().left().body());
    if (!cand.closed() || definedness_formula(cand) != guard) return none;
    from_guard = cand;
  }
  auto settle = [&](const std::optional<Term>& matched) -> std::optional<Term> {
    if (matched) {
      if (guard_is_top ? !matched->is_param() : *matched != *from_guard) return std::nullopt;
      return matched;
    }
    if (from_guard) return from_guard;
    return Term::param("c");
  };

  Formula q = lhs.right();
  if (q.is(Kind::Forall)) {
    std::optional<Term> t;
    if (match_instance(q, rhs, t))
      if (auto term = settle(t)) return {HilbertSchema::EpsQ1, q, *term};
  }
  if (rhs.is(Kind::Exists)) {
    std::optional<Term> t;
    if (match_instance(rhs, q, t))
      if (auto term = settle(t)) return {HilbertSchema::EpsQ2, rhs, *term};
  }
  return none;
}

Derivation hilbert_axiom_derivation(const HilbertInstance& inst) {
  const Formula& q = inst.quantified;
  const Term& t = inst.term;
  switch (inst.schema) {
    case HilbertSchema::EpsQ1:
      if (!q.is(Kind::Forall)) throw InvalidInstantiation("EpsQ1 needs a universal formula");
      break;
    case HilbertSchema::EpsQ2:
    case HilbertSchema::Critical:
      if (!q.is(Kind::Exists)) throw InvalidInstantiation("schema needs an existential formula");
      break;
    case HilbertSchema::None:
      throw InvalidInstantiation("no schema");
  }
  if (!q.closed() || !t.closed()) throw InvalidInstantiation("instantiation must be closed");
  if (inst.schema == HilbertSchema::Critical && t != q.witness())
    throw InvalidInstantiation("critical axiom is instantiated at the epsilon-term of its formula");

  Formula axiom = hilbert_axiom(inst);
  Sequent goal({}, {axiom});

  if (inst.schema == HilbertSchema::Critical) {
    // => Ex A -> A(e)  <-  Ex A => A(e)  <-  A(e) => A(e)
    Formula body = q.instantiate(t);
    Derivation ax = leaf(Sequent({body}, {body}));
    Derivation ex = node(Sequent({q}, {body}), Rule::ExLEps, {ax});
    return node(goal, Rule::ImpR, {ex});
  }

  Formula guard = definedness_formula(t);
  Formula inst_body = q.instantiate(t);
  Formula conj = axiom.left();
  Formula concl = axiom.right();

  FormulaSet split{guard, inst_body};
  Derivation quant;
  if (inst.schema == HilbertSchema::EpsQ2) {
    // t-down, A(t) => Ex A by the guarded right rule
    std::vector<Derivation> ps;
    if (!guard.is(Kind::Top)) ps.push_back(leaf(Sequent(split, {guard})));
    ps.push_back(leaf(Sequent(split, {inst_body})));
    quant = node(Sequent(split, {concl}), Rule::ExR, std::move(ps));
  } else {
    // t-down, All A => A(t) by the guarded left rule
    split = {guard, q};
    std::vector<Derivation> ps;
    if (!guard.is(Kind::Top)) ps.push_back(leaf(Sequent(split, {guard})));
    FormulaSet with_inst = split;
    with_inst.insert(inst_body);
    ps.push_back(leaf(Sequent(with_inst, {inst_body})));
    quant = node(Sequent(split, {concl}), Rule::AllL, std::move(ps));
  }
  quant.witness = t;
  Derivation andl = node(Sequent({conj}, {concl}), Rule::AndL, {quant});
  return node(goal, Rule::ImpR, {andl});
}

}  // namespace epsk
