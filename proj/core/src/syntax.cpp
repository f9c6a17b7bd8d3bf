#include "epsk/syntax.hpp"

#include <algorithm>
#include <functional>

namespace epsk {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return mix(h, s.size());
}

bool is_binder(Kind k) {
  return k == Kind::Eps || k == Kind::Forall || k == Kind::Exists;
}

NodePtr make_node(Kind kind, std::string name, unsigned index,
                  std::vector<NodePtr> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->index = index;
  n->children = std::move(children);

  std::uint64_t h = mix(kFnvOffset, static_cast<std::uint64_t>(kind));
  if (kind == Kind::Param || kind == Kind::Atom) h = mix(h, n->name);
  if (kind == Kind::Bound) h = mix(h, index);
  unsigned loose = kind == Kind::Bound ? index + 1 : 0;
  unsigned inner = 0;
  bool has_eps = kind == Kind::Eps;
  for (const auto& c : n->children) {
    h = mix(h, c->hash);
    unsigned cl = c->loose;
    if (is_binder(kind) && cl > 0) --cl;
    loose = std::max(loose, cl);
    inner = std::max(inner, c->eps_inner);
    has_eps = has_eps || c->has_eps;
  }
  if (kind == Kind::Eps || kind == Kind::Exists) ++inner;
  n->hash = h;
  n->loose = loose;
  n->eps_inner = inner;
  n->has_eps = has_eps;
  return n;
}

NodePtr rebuild(const NodePtr& n, std::vector<NodePtr> children) {
  return make_node(n->kind, n->name, n->index, std::move(children));
}

// Replace loose index `depth` by the closed node `t`, lowering higher
// loose indices by one.
NodePtr open_at(const NodePtr& n, const NodePtr& t, unsigned depth) {
  if (n->loose <= depth) return n;
  if (n->kind == Kind::Bound) {
    if (n->index == depth) return t;
    return make_node(Kind::Bound, "", n->index - 1, {});
  }
  std::vector<NodePtr> cs;
  cs.reserve(n->children.size());
  unsigned d = is_binder(n->kind) ? depth + 1 : depth;
  for (const auto& c : n->children) cs.push_back(open_at(c, t, d));
  return rebuild(n, std::move(cs));
}

// Turn parameter `var` into loose index `depth`, raising existing loose
// indices at or above `depth`.
NodePtr abstract_at(const NodePtr& n, const std::string& var, unsigned depth) {
  switch (n->kind) {
    case Kind::Param:
      if (n->name == var) return make_node(Kind::Bound, "", depth, {});
      return n;
    case Kind::Bound:
      if (n->index >= depth) return make_node(Kind::Bound, "", n->index + 1, {});
      return n;
    default:
      break;
  }
  if (n->children.empty()) return n;
  std::vector<NodePtr> cs;
  cs.reserve(n->children.size());
  unsigned d = is_binder(n->kind) ? depth + 1 : depth;
  bool changed = false;
  for (const auto& c : n->children) {
    cs.push_back(abstract_at(c, var, d));
    changed = changed || cs.back() != c;
  }
  return changed ? rebuild(n, std::move(cs)) : n;
}

NodePtr replace_param(const NodePtr& n, const std::string& x, const NodePtr& t) {
  if (n->kind == Kind::Param) return n->name == x ? t : n;
  if (n->children.empty()) return n;
  std::vector<NodePtr> cs;
  cs.reserve(n->children.size());
  bool changed = false;
  for (const auto& c : n->children) {
    cs.push_back(replace_param(c, x, t));
    changed = changed || cs.back() != c;
  }
  return changed ? rebuild(n, std::move(cs)) : n;
}

void params_of(const NodePtr& n, std::set<std::string>& out) {
  if (n->kind == Kind::Param) {
    out.insert(n->name);
    return;
  }
  for (const auto& c : n->children) params_of(c, out);
}

void eps_of(const NodePtr& n, TermSet& out) {
  if (!n->has_eps) return;
  if (n->kind == Kind::Eps && n->loose == 0) out.insert(Term(n));
  for (const auto& c : n->children) eps_of(c, out);
}

}  // namespace

int compare_nodes(const NodePtr& a, const NodePtr& b) {
  if (a == b) return 0;
  if (a->hash != b->hash) return a->hash < b->hash ? -1 : 1;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == Kind::Param || a->kind == Kind::Atom) {
    int c = a->name.compare(b->name);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a->index != b->index) return a->index < b->index ? -1 : 1;
  if (a->children.size() != b->children.size())
    return a->children.size() < b->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    int c = compare_nodes(a->children[i], b->children[i]);
    if (c != 0) return c;
  }
  return 0;
}

// ---- Term

Term Term::bound(unsigned index) { return Term(make_node(Kind::Bound, "", index, {})); }

Term Term::param(std::string name) {
  return Term(make_node(Kind::Param, std::move(name), 0, {}));
}

Term Term::eps(std::string hint, const Formula& body) {
  return Term(make_node(Kind::Eps, std::move(hint), 0, {body.node()}));
}

Formula Term::body() const { return Formula(node_->children.at(0)); }

unsigned Term::eps_rank() const { return is_eps() ? node_->eps_inner : 0; }

// ---- Formula

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  std::vector<NodePtr> cs;
  cs.reserve(args.size());
  for (auto& a : args) cs.push_back(a.node());
  return Formula(make_node(Kind::Atom, std::move(pred), 0, std::move(cs)));
}

Formula Formula::bot() {
  static const Formula f(make_node(Kind::Bot, "", 0, {}));
  return f;
}

Formula Formula::top() {
  static const Formula f(make_node(Kind::Top, "", 0, {}));
  return f;
}

Formula Formula::conj(const Formula& a, const Formula& b) {
  return Formula(make_node(Kind::And, "", 0, {a.node(), b.node()}));
}

Formula Formula::disj(const Formula& a, const Formula& b) {
  return Formula(make_node(Kind::Or, "", 0, {a.node(), b.node()}));
}

Formula Formula::imp(const Formula& a, const Formula& b) {
  return Formula(make_node(Kind::Imp, "", 0, {a.node(), b.node()}));
}

Formula Formula::forall(std::string hint, const Formula& body) {
  return Formula(make_node(Kind::Forall, std::move(hint), 0, {body.node()}));
}

Formula Formula::exists(std::string hint, const Formula& body) {
  return Formula(make_node(Kind::Exists, std::move(hint), 0, {body.node()}));
}

Formula Formula::forall_over(const std::string& var, const Formula& f) {
  return forall(var, Formula(abstract_at(f.node(), var, 0)));
}

Formula Formula::exists_over(const std::string& var, const Formula& f) {
  return exists(var, Formula(abstract_at(f.node(), var, 0)));
}

bool Formula::is_negation() const { return is(Kind::Imp) && right().is(Kind::Bot); }

std::vector<Term> Formula::args() const {
  std::vector<Term> out;
  out.reserve(node_->children.size());
  for (const auto& c : node_->children) out.emplace_back(c);
  return out;
}

Formula Formula::instantiate(const Term& t) const {
  if (!is_quantifier()) throw std::logic_error("instantiate: not a quantifier");
  if (!t.closed()) throw std::logic_error("instantiate: term is not closed");
  return Formula(open_at(node_->children.at(0), t.node(), 0));
}

Term Formula::witness() const {
  if (!is(Kind::Exists)) throw std::logic_error("witness: not an existential");
  return Term::eps(name(), body());
}

// ---- operations

Formula substitute(const Formula& a, const std::string& x, const Term& t) {
  if (!t.closed()) throw std::logic_error("substitute: term is not closed");
  return Formula(replace_param(a.node(), x, t.node()));
}

Term substitute(const Term& a, const std::string& x, const Term& t) {
  if (!t.closed()) throw std::logic_error("substitute: term is not closed");
  return Term(replace_param(a.node(), x, t.node()));
}

Formula definedness_formula(const Term& t) {
  switch (t.kind()) {
    case Kind::Param:
      return Formula::top();
    case Kind::Eps: {
      if (!t.closed()) throw std::logic_error("definedness_formula: open term");
      // Under exists y, the inner exists x rebinds index 0 and the bare body
      // refers to y; a closed eps body has no other loose index.
      Formula body = t.body();
      return Formula::exists("y", Formula::imp(Formula::exists(t.name(), body), body));
    }
    default:
      throw std::logic_error("definedness_formula: bound variable");
  }
}

bool alpha_eq(const Formula& a, const Formula& b) { return a == b; }
bool alpha_eq(const Term& a, const Term& b) { return a == b; }
bool alpha_eq(const Sequent& a, const Sequent& b) { return a == b; }

std::set<std::string> free_params(const Formula& f) {
  std::set<std::string> out;
  params_of(f.node(), out);
  return out;
}

std::set<std::string> free_params(const Term& t) {
  std::set<std::string> out;
  params_of(t.node(), out);
  return out;
}

std::set<std::string> free_params(const FormulaSet& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) params_of(f.node(), out);
  return out;
}

std::set<std::string> free_params(const Sequent& s) {
  auto out = free_params(s.antecedent);
  for (const auto& f : s.succedent) params_of(f.node(), out);
  return out;
}

void collect_eps_terms(const Formula& f, TermSet& out) { eps_of(f.node(), out); }
void collect_eps_terms(const Term& t, TermSet& out) { eps_of(t.node(), out); }

TermSet eps_terms(const Sequent& s) {
  TermSet out;
  for (const auto& f : s.antecedent) eps_of(f.node(), out);
  for (const auto& f : s.succedent) eps_of(f.node(), out);
  return out;
}

std::set<std::pair<std::string, std::size_t>> predicates(const Formula& f) {
  std::set<std::pair<std::string, std::size_t>> out;
  std::function<void(const NodePtr&)> walk = [&](const NodePtr& n) {
    if (n->kind == Kind::Atom) out.emplace(n->name, n->children.size());
    for (const auto& c : n->children) walk(c);
  };
  walk(f.node());
  return out;
}

unsigned formula_depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return 1 + std::max(formula_depth(f.left()), formula_depth(f.right()));
    case Kind::Forall:
    case Kind::Exists:
      return 1 + formula_depth(f.body());
    default:
      return 0;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (unsigned i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

// ---- printing

namespace {

class Printer {
 public:
  std::string term(const NodePtr& n) {
    switch (n->kind) {
      case Kind::Bound:
        if (n->index >= names_.size()) return "?" + std::to_string(n->index);
        return names_[names_.size() - 1 - n->index];
      case Kind::Param:
        return n->name;
      case Kind::Eps:
        return binder("eps", n);
      default:
        throw std::logic_error("print: formula node in term position");
    }
  }

  // Precedence: 0 quantifier, 1 ->, 2 |, 3 &, 4 unary/atomic.
  std::string formula(const NodePtr& n, int ctx) {
    switch (n->kind) {
      case Kind::Bot:
        return "bot";
      case Kind::Top:
        return "top";
      case Kind::Atom: {
        if (n->children.empty()) return n->name;
        std::string s = n->name + "(";
        for (std::size_t i = 0; i < n->children.size(); ++i) {
          if (i) s += ", ";
          s += term(n->children[i]);
        }
        return s + ")";
      }
      case Kind::Imp:
        if (n->children[1]->kind == Kind::Bot) return "~" + formula(n->children[0], 4);
        return wrap(formula(n->children[0], 2) + " -> " + formula(n->children[1], 1), ctx > 1);
      case Kind::Or:
        return wrap(formula(n->children[0], 2) + " | " + formula(n->children[1], 3), ctx > 2);
      case Kind::And:
        return wrap(formula(n->children[0], 3) + " & " + formula(n->children[1], 4), ctx > 3);
      case Kind::Forall:
        return wrap(binder("forall", n), ctx > 0);
      case Kind::Exists:
        return wrap(binder("exists", n), ctx > 0);
      default:
        throw std::logic_error("print: term node in formula position");
    }
  }

 private:
  static std::string wrap(std::string s, bool paren) { return paren ? "(" + s + ")" : s; }

  std::string binder(const char* word, const NodePtr& n) {
    std::set<std::string> avoid(names_.begin(), names_.end());
    params_of(n, avoid);
    std::string name = fresh_name(n->name.empty() ? "x" : n->name, avoid);
    names_.push_back(name);
    std::string body = formula(n->children[0], 0);
    names_.pop_back();
    return std::string(word) + " " + name + ". " + body;
  }

  std::vector<std::string> names_;
};

}  // namespace

std::string print(const Term& t) { return Printer().term(t.node()); }
std::string print(const Formula& f) { return Printer().formula(f.node(), 0); }

std::string print(const Sequent& s) {
  std::string out;
  bool first = true;
  for (const auto& f : s.antecedent) {
    if (!first) out += ", ";
    out += print(f);
    first = false;
  }
  out += out.empty() ? "=>" : " =>";
  first = true;
  for (const auto& f : s.succedent) {
    out += first ? " " : ", ";
    out += print(f);
    first = false;
  }
  return out;
}

}  // namespace epsk
