#include <algorithm>
#include <cctype>

#include "epsk/semantics.hpp"
#include "semantics_internal.hpp"

namespace epsk {

const char* precondition_name(Precondition p) {
  switch (p) {
    case Precondition::NoTree: return "NoTree";
    case Precondition::DomainsNotStrict: return "DomainsNotStrict";
    case Precondition::NoUndefinedSlot: return "NoUndefinedSlot";
    case Precondition::EmptyRootDomain: return "EmptyRootDomain";
  }
  return "?";
}

std::optional<int> tree_root(const KripkeModel& m) {
  int n = static_cast<int>(m.size());
  std::optional<int> root;
  for (int r = 0; r < n && !root; ++r) {
    bool all = true;
    for (int w = 0; w < n && all; ++w) all = m.below(r, w);
    if (all) root = r;
  }
  if (!root) return std::nullopt;
  // The strict predecessors of each world form a chain.
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (m.strictly_below(a, w) && m.strictly_below(b, w) && !m.below(a, b) && !m.below(b, a))
          return std::nullopt;
  return root;
}

namespace {

// Worlds at or below w, root first.
std::vector<int> chain_to(const KripkeModel& m, int w) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(m.size()); ++v)
    if (m.below(v, w)) out.push_back(v);
  std::sort(out.begin(), out.end(), [&](int a, int b) { return m.strictly_below(a, b); });
  return out;
}

void require_tree(const KripkeModel& m) {
  if (m.size() == 0 || !tree_root(m)) throw PreconditionViolation(Precondition::NoTree, "the frame is not a finite rooted tree");
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

KripkeModel extend_with_epsilon(const KripkeModel& m0, const TermSet& tracked) {
  require_tree(m0);
  int n = static_cast<int>(m0.size());
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      if (m0.strictly_below(w, v) && m0.domains[w].size() >= m0.domains[v].size())
        throw PreconditionViolation(Precondition::DomainsNotStrict,
                                    "domain does not grow from " + m0.worlds[w] + " to " + m0.worlds[v]);

  KripkeModel m = m0;
  m.flavor = Flavor::EpsBot;
  m.tracked = close_tracked(tracked);
  m.valuation.assign(n, {});
  m.element_order = m0.ordered_elements();
  const std::vector<Term> order = m.element_order;

  Evaluator* self = nullptr;
  auto resolve = [&](const Term& k, int w) -> std::optional<Term> {
    Evaluator& ev = *self;
    Formula down = definedness_formula(k);
    Formula ex = Formula::exists(k.name(), k.body());
    if (ev.forces(w, down)) {
      for (int v : chain_to(m, w)) {
        if (!ev.forces(v, down)) continue;
        for (const auto& d : order)
          if (m.domains[v].count(d) && ev.forces(v, Formula::imp(ex, ex.instantiate(d)))) return d;
      }
    } else {
      for (const auto& d : order)
        if (!m.domains[w].count(d)) return d;
      throw PreconditionViolation(Precondition::NoUndefinedSlot,
                                  print(k) + " is undefined at " + m.worlds[w] + " whose domain is everything");
    }
    return std::nullopt;
  };
  {
    Evaluator ev(m, resolve);
    self = &ev;
    detail::check_model(m, ev, {});
    for (const auto& [wk, v] : ev.resolved()) m.valuation[wk.first][wk.second] = v;
  }
  return m;
}

KripkeModel strictify_domains(const KripkeModel& m0) {
  require_tree(m0);
  int root = *tree_root(m0);
  if (m0.domains[root].empty()) throw PreconditionViolation(Precondition::EmptyRootDomain, "root domain is empty");
  std::vector<Term> order = m0.ordered_elements();
  Term e = *std::find_if(order.begin(), order.end(), [&](const Term& t) { return m0.domains[root].count(t); });

  int n = static_cast<int>(m0.size());
  std::set<std::string> used;
  for (const auto& t : m0.all_elements())
    if (t.is_param()) used.insert(t.name());
  std::vector<Term> dup;
  for (int w = 0; w < n; ++w) {
    std::string name = fresh_name(e.name() + "_" + sanitize(m0.worlds[w]), used);
    used.insert(name);
    dup.push_back(Term::param(name));
  }

  KripkeModel m = m0;
  m.element_order = order;
  m.element_order.insert(m.element_order.end(), dup.begin(), dup.end());
  for (int v = 0; v < n; ++v) {
    std::vector<Term> copies{e};
    for (int w = 0; w < n; ++w)
      if (m0.below(w, v)) {
        m.domains[v].insert(dup[w]);
        copies.push_back(dup[w]);
      }
    FormulaSet out;
    for (const auto& a : m0.atoms[v]) {
      std::vector<std::vector<Term>> partial{{}};
      for (const auto& t : a.args()) {
        std::vector<std::vector<Term>> next;
        for (const auto& p : partial) {
          if (t == e) {
            for (const auto& c : copies) {
              next.push_back(p);
              next.back().push_back(c);
            }
          } else {
            next.push_back(p);
            next.back().push_back(t);
          }
        }
        partial = std::move(next);
      }
      for (auto& args : partial) out.insert(Formula::atom(a.name(), std::move(args)));
    }
    m.atoms[v] = std::move(out);
  }
  return m;
}

}  // namespace epsk
