#include "epsk/semantics.hpp"

#include <algorithm>

#include "semantics_internal.hpp"

namespace epsk {

const char* flavor_name(Flavor f) { return f == Flavor::Term ? "term" : "epsbot"; }

int KripkeModel::world_index(const std::string& name) const {
  auto it = std::find(worlds.begin(), worlds.end(), name);
  return it == worlds.end() ? -1 : static_cast<int>(it - worlds.begin());
}

int KripkeModel::add_world(std::string name, TermSet domain, FormulaSet world_atoms) {
  worlds.push_back(std::move(name));
  domains.push_back(std::move(domain));
  atoms.push_back(std::move(world_atoms));
  valuation.emplace_back();
  for (auto& row : le) row.push_back(false);
  le.emplace_back(worlds.size(), false);
  le.back().back() = true;
  return static_cast<int>(worlds.size()) - 1;
}

void KripkeModel::set_order(const std::vector<std::pair<int, int>>& pairs) {
  std::size_t n = worlds.size();
  le.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : pairs) le.at(a).at(b) = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
}

std::vector<int> KripkeModel::successors(int w) const {
  std::vector<int> out;
  int n = static_cast<int>(size());
  for (int v = 0; v < n; ++v) {
    if (!strictly_below(w, v)) continue;
    bool immediate = true;
    for (int u = 0; u < n && immediate; ++u)
      if (strictly_below(w, u) && strictly_below(u, v)) immediate = false;
    if (immediate) out.push_back(v);
  }
  return out;
}

TermSet KripkeModel::all_elements() const {
  TermSet out;
  for (const auto& d : domains) out.insert(d.begin(), d.end());
  return out;
}

std::vector<Term> KripkeModel::ordered_elements() const {
  TermSet all = all_elements();
  std::vector<Term> out;
  TermSet seen;
  for (const auto& e : element_order)
    if (all.count(e) && seen.insert(e).second) out.push_back(e);
  for (const auto& d : domains)
    for (const auto& e : d)
      if (seen.insert(e).second) out.push_back(e);
  return out;
}

namespace detail {

namespace {

NodePtr map_node(const NodePtr& n, const std::function<Term(const Term&)>& f);

Formula map_formula(const Formula& a, const std::function<Term(const Term&)>& f) {
  return Formula(map_node(a.node(), f));
}

NodePtr map_node(const NodePtr& n, const std::function<Term(const Term&)>& f) {
  if (!n->has_eps) return n;
  switch (n->kind) {
    case Kind::Eps:
      if (n->loose == 0) return f(Term(n)).node();
      return Term::eps(n->name, map_formula(Formula(n->children[0]), f)).node();
    case Kind::Atom: {
      std::vector<Term> args;
      for (const auto& c : n->children) args.emplace_back(map_node(c, f));
      return Formula::atom(n->name, std::move(args)).node();
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Imp: {
      Formula l = map_formula(Formula(n->children[0]), f);
      Formula r = map_formula(Formula(n->children[1]), f);
      if (n->kind == Kind::And) return Formula::conj(l, r).node();
      if (n->kind == Kind::Or) return Formula::disj(l, r).node();
      return Formula::imp(l, r).node();
    }
    case Kind::Forall:
      return Formula::forall(n->name, map_formula(Formula(n->children[0]), f)).node();
    case Kind::Exists:
      return Formula::exists(n->name, map_formula(Formula(n->children[0]), f)).node();
    default:
      return n;
  }
}

}  // namespace

Term map_closed_eps_in_body(const Term& t, const std::function<Term(const Term&)>& f) {
  if (!t.is_eps()) return t;
  return Term::eps(t.name(), map_formula(t.body(), f));
}

}  // namespace detail

Evaluator::Evaluator(const KripkeModel& m, Resolver resolver) : m_(m), resolver_(std::move(resolver)) {}

Term Evaluator::key(int w, const Term& t) {
  if (!t.is_eps() || m_.flavor == Flavor::Term) return t;
  return detail::map_closed_eps_in_body(t, [&](const Term& s) { return value(w, s); });
}

Term Evaluator::value(int w, const Term& t) {
  if (!t.is_eps() || m_.flavor == Flavor::Term) return t;
  Term k = key(w, t);
  const auto& vals = m_.valuation.at(w);
  if (auto it = vals.find(k); it != vals.end()) return it->second;
  if (auto it = resolved_.find({w, k}); it != resolved_.end()) return it->second;
  if (resolver_) {
    if (auto v = resolver_(k, w)) {
      resolved_.emplace(std::make_pair(w, k), *v);
      return *v;
    }
  }
  throw UnTrackedEpsilonTerm(print(k));
}

bool Evaluator::atom(int w, const Formula& a) {
  std::vector<Term> args;
  for (const auto& t : a.args()) {
    Term v = value(w, t);
    if (m_.flavor == Flavor::EpsBot && !m_.domains[w].count(v)) return false;
    args.push_back(v);
  }
  return m_.atoms[w].count(Formula::atom(a.name(), std::move(args))) > 0;
}

bool Evaluator::forces(int w, const Formula& a) {
  switch (a.kind()) {
    case Kind::Bot: return false;
    case Kind::Top: return true;
    case Kind::Atom: return atom(w, a);
    default: break;
  }
  auto ck = std::make_pair(w, a);
  if (auto it = cache_.find(ck); it != cache_.end()) return it->second;
  bool r = false;
  int n = static_cast<int>(m_.size());
  switch (a.kind()) {
    case Kind::And:
      r = forces(w, a.left()) && forces(w, a.right());
      break;
    case Kind::Or:
      r = forces(w, a.left()) || forces(w, a.right());
      break;
    case Kind::Imp:
      r = true;
      for (int v = 0; v < n && r; ++v)
        if (m_.below(w, v) && forces(v, a.left()) && !forces(v, a.right())) r = false;
      break;
    case Kind::Forall:
      r = true;
      for (int v = 0; v < n && r; ++v) {
        if (!m_.below(w, v)) continue;
        for (const auto& d : m_.domains[v])
          if (!forces(v, a.instantiate(d))) {
            r = false;
            break;
          }
      }
      break;
    case Kind::Exists:
      for (const auto& d : m_.domains[w])
        if (forces(w, a.instantiate(d))) {
          r = true;
          break;
        }
      break;
    default:
      break;
  }
  cache_.emplace(ck, r);
  return r;
}

bool Evaluator::defined_at(int w, const Term& t) {
  if (!t.is_eps()) return true;
  return forces(w, definedness_formula(t));
}

namespace {

bool params_present(const KripkeModel& m, int w, const Sequent& s) {
  for (const auto& p : free_params(s))
    if (!m.domains[w].count(Term::param(p))) return false;
  return true;
}

}  // namespace

std::vector<int> Evaluator::refuting_worlds(const Sequent& s) {
  std::vector<int> out;
  for (int w = 0; w < static_cast<int>(m_.size()); ++w) {
    if (!params_present(m_, w, s)) continue;
    bool ante = std::all_of(s.antecedent.begin(), s.antecedent.end(),
                            [&](const Formula& f) { return forces(w, f); });
    if (!ante) continue;
    bool succ = std::any_of(s.succedent.begin(), s.succedent.end(),
                            [&](const Formula& f) { return forces(w, f); });
    if (!succ) out.push_back(w);
  }
  return out;
}

bool Evaluator::sequent_valid(const Sequent& s) { return refuting_worlds(s).empty(); }

bool forces(const KripkeModel& m, int w, const Formula& a) { return Evaluator(m).forces(w, a); }

bool defined_at(const KripkeModel& m, int w, const Term& t) { return Evaluator(m).defined_at(w, t); }

bool sequent_valid(const KripkeModel& m, const Sequent& s) { return Evaluator(m).sequent_valid(s); }

const char* issue_name(ModelIssue i) {
  switch (i) {
    case ModelIssue::OrderNotStrict: return "OrderNotStrict";
    case ModelIssue::EmptyDomain: return "EmptyDomain";
    case ModelIssue::DomainNotMonotone: return "DomainNotMonotone";
    case ModelIssue::MonotonicityViolation: return "MonotonicityViolation";
    case ModelIssue::UndefinedElementViolation: return "UndefinedElementViolation";
    case ModelIssue::TrackedNotClosed: return "TrackedNotClosed";
    case ModelIssue::MissingValuation: return "MissingValuation";
    case ModelIssue::DefinedValueOutsideDomain: return "DefinedValueOutsideDomain";
    case ModelIssue::UndefinedValueInDomain: return "UndefinedValueInDomain";
    case ModelIssue::ValueNotStable: return "ValueNotStable";
    case ModelIssue::EpsInsideViolation: return "EpsInsideViolation";
    case ModelIssue::CriticalConditionViolation: return "CriticalConditionViolation";
    case ModelIssue::ValueNotElement: return "ValueNotElement";
  }
  return "?";
}

bool ValidationReport::has(ModelIssue i) const {
  return std::any_of(problems.begin(), problems.end(), [i](const ModelProblem& p) { return p.issue == i; });
}

TermSet close_tracked(const TermSet& ts) {
  TermSet out;
  for (const auto& t : ts) {
    if (t.is_eps() && t.closed()) out.insert(t);
    collect_eps_terms(t, out);
  }
  return out;
}

namespace detail {

namespace {

class ModelChecker {
 public:
  ModelChecker(const KripkeModel& m, Evaluator& ev, const ValidationOptions& opts)
      : m_(m), ev_(ev), opts_(opts), n_(static_cast<int>(m.size())) {}

  ValidationReport run() {
    if (!shape_ok()) return std::move(r_);
    order();
    domains();
    atoms();
    tracked();
    if (m_.flavor == Flavor::EpsBot) valuation_keys();
    return std::move(r_);
  }

 private:
  void add(ModelIssue i, int w, std::string detail) {
    r_.problems.push_back({i, w >= 0 ? m_.worlds[w] : std::string(), std::move(detail)});
  }

  bool shape_ok() {
    bool ok = m_.le.size() == m_.worlds.size() && m_.domains.size() == m_.worlds.size() &&
              m_.atoms.size() == m_.worlds.size();
    for (const auto& row : m_.le) ok = ok && row.size() == m_.worlds.size();
    if (m_.flavor == Flavor::EpsBot) ok = ok && m_.valuation.size() == m_.worlds.size();
    if (!ok) add(ModelIssue::OrderNotStrict, -1, "world tables have inconsistent sizes");
    return ok;
  }

  void order() {
    for (int a = 0; a < n_; ++a) {
      if (!m_.le[a][a]) add(ModelIssue::OrderNotStrict, a, "order is not reflexive");
      for (int b = 0; b < n_; ++b) {
        if (a < b && m_.le[a][b] && m_.le[b][a])
          add(ModelIssue::OrderNotStrict, a, "cycle with " + m_.worlds[b]);
        for (int c = 0; c < n_; ++c)
          if (m_.le[a][b] && m_.le[b][c] && !m_.le[a][c])
            add(ModelIssue::OrderNotStrict, a, "order is not transitive");
      }
    }
  }

  void domains() {
    for (int w = 0; w < n_; ++w) {
      if (m_.domains[w].empty()) add(ModelIssue::EmptyDomain, w, "empty domain");
      if (m_.flavor == Flavor::EpsBot)
        for (const auto& d : m_.domains[w])
          if (!d.is_param()) add(ModelIssue::ValueNotElement, w, "element " + print(d) + " is not a constant");
      for (int v = 0; v < n_; ++v) {
        if (!m_.strictly_below(w, v)) continue;
        for (const auto& d : m_.domains[w])
          if (!m_.domains[v].count(d))
            add(ModelIssue::DomainNotMonotone, w, print(d) + " missing at " + m_.worlds[v]);
      }
    }
  }

  void atoms() {
    TermSet all = m_.all_elements();
    for (int w = 0; w < n_; ++w) {
      for (const auto& a : m_.atoms[w]) {
        if (!a.is(Kind::Atom) || !a.closed()) {
          add(ModelIssue::UndefinedElementViolation, w, print(a) + " is not a ground atom");
          continue;
        }
        for (int v = 0; v < n_; ++v)
          if (m_.strictly_below(w, v) && !m_.atoms[v].count(a))
            add(ModelIssue::MonotonicityViolation, w, print(a) + " lost at " + m_.worlds[v]);
        if (m_.flavor != Flavor::EpsBot) continue;
        for (const auto& t : a.args())
          if (!m_.domains[w].count(t))
            add(ModelIssue::UndefinedElementViolation, w,
                print(a) + " mentions " + print(t) + (all.count(t) ? ", undefined here" : ", not an element"));
      }
    }
  }

  void tracked() {
    for (const auto& e : m_.tracked) {
      if (!e.is_eps() || !e.closed()) {
        add(ModelIssue::TrackedNotClosed, -1, print(e) + " is not a closed epsilon-term");
        continue;
      }
      TermSet subs;
      collect_eps_terms(e, subs);
      for (const auto& s : subs)
        if (!m_.tracked.count(s)) add(ModelIssue::TrackedNotClosed, -1, print(s) + " is not tracked");
      for (int w = 0; w < n_; ++w) {
        try {
          term_at(e, w);
        } catch (const UnTrackedEpsilonTerm& ex) {
          add(ModelIssue::MissingValuation, w, ex.what());
        }
      }
    }
  }

  void term_at(const Term& e, int w) {
    TermSet all = m_.all_elements();
    bool def = ev_.defined_at(w, e);
    Term val = ev_.value(w, e);
    std::string name = print(e);
    if (m_.flavor == Flavor::EpsBot && !all.count(val))
      add(ModelIssue::ValueNotElement, w, "value of " + name + " is not an element");
    if (def) {
      if (!m_.domains[w].count(val))
        add(ModelIssue::DefinedValueOutsideDomain, w, name + " is defined but its value " + print(val) + " is not in the domain");
      for (int v = 0; v < n_; ++v)
        if (m_.strictly_below(w, v) && ev_.value(v, e) != val)
          add(ModelIssue::ValueNotStable, w, "value of " + name + " changes at " + m_.worlds[v]);
    } else if (m_.flavor == Flavor::EpsBot && m_.domains[w].count(val)) {
      add(ModelIssue::UndefinedValueInDomain, w, name + " is undefined but its value " + print(val) + " is in the domain");
    }
    if (opts_.critical_condition) {
      Formula ex = Formula::exists(e.name(), e.body());
      if (ev_.forces(w, ex) && !ev_.forces(w, ex.instantiate(val)))
        add(ModelIssue::CriticalConditionViolation, w, print(ex) + " holds but not at the value of " + name);
    }
  }

  void valuation_keys() {
    TermSet all = m_.all_elements();
    for (int w = 0; w < n_; ++w) {
      for (const auto& [k, v] : m_.valuation[w]) {
        if (!all.count(v)) add(ModelIssue::ValueNotElement, w, "value of " + print(k) + " is not an element");
        try {
          Term reduced = ev_.key(w, k);
          if (reduced != k && ev_.value(w, k) != v)
            add(ModelIssue::EpsInsideViolation, w, print(k) + " disagrees with " + print(reduced));
        } catch (const UnTrackedEpsilonTerm& ex) {
          add(ModelIssue::MissingValuation, w, ex.what());
        }
      }
    }
  }

  const KripkeModel& m_;
  Evaluator& ev_;
  const ValidationOptions& opts_;
  int n_;
  ValidationReport r_;
};

}  // namespace

ValidationReport check_model(const KripkeModel& m, Evaluator& ev, const ValidationOptions& opts) {
  return ModelChecker(m, ev, opts).run();
}

}  // namespace detail

ValidationReport validate_model(const KripkeModel& m, const ValidationOptions& opts) {
  Evaluator ev(m);
  try {
    return detail::check_model(m, ev, opts);
  } catch (const std::exception& ex) {
    ValidationReport r;
    r.problems.push_back({ModelIssue::MissingValuation, "", ex.what()});
    return r;
  }
}

}  // namespace epsk
