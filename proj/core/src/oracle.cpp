#include "sqclp/engine.hpp"

#include "support.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace sqclp {

using detail::Bindings;

namespace {

constexpr std::size_t kNoEntry = std::numeric_limits<std::size_t>::max();

}  // namespace

struct GroundOracle::Impl {
  struct Entry {
    Atom atom;
    QualValue degree;
    std::size_t layer;
    std::size_t clause;
    Bindings theta;
    std::vector<std::size_t> body;  // table entry per defined body atom, kNoEntry otherwise
  };
  using Table = std::map<Atom, std::vector<std::size_t>>;

  Program prog;
  TermUniverse universe;
  std::set<Term> members;
  std::vector<Entry> entries;
  Table best;
  std::size_t height = 0;
  bool converged = false;

  Impl(Program p, TermUniverse u) : prog(std::move(p)), universe(std::move(u)) {
    members.insert(universe.terms().begin(), universe.terms().end());
  }

  const QualDomain& dom() const { return prog.qdom; }

  bool in_universe(const Atom& a) const {
    return std::all_of(a.args().begin(), a.args().end(), [&](const Term& t) { return members.contains(t); });
  }

  struct Option {
    QualValue degree;
    std::size_t entry;
  };

  std::vector<Option> body_options(const BodyItem& item, const Atom& a, const Table& table) const {
    std::vector<Option> out;
    auto offer = [&](const QualValue& e, std::size_t entry) {
      if (!dom().is_bottom(e) && dom().threshold_ok(e, item.threshold)) out.push_back({e, entry});
    };
    switch (a.kind()) {
      case Atom::Kind::Equation:
        offer(term_prox(prog.prox, a.lhs(), a.rhs()), kNoEntry);
        break;
      case Atom::Kind::Primitive:
        if (variables(a).empty() && eval_ground(a)) offer(dom().top(), kNoEntry);
        break;
      case Atom::Kind::Defined:
        if (!in_universe(a)) break;
        if (auto it = table.find(a); it != table.end())
          for (std::size_t e : it->second) offer(entries[e].degree, e);
        break;
    }
    return out;
  }

  // Every way clause `ci` under `theta` concludes an atom (optionally a fixed one).
  template <class Emit>
  void expand(std::size_t ci, const Bindings& theta, const Table& table, const Atom* fixed, Emit&& emit) const {
    const Clause& c = prog.clauses[ci];
    Substitution sub(theta);
    std::vector<std::vector<Option>> options;
    for (const BodyItem& b : c.body) {
      options.push_back(body_options(b, sub.apply(b.atom), table));
      if (options.back().empty()) return;
    }
    std::vector<std::pair<QualValue, std::vector<std::size_t>>> bodies;
    detail::for_each_choice(options, [&](const std::vector<const Option*>& pick) {
      QualValue e = dom().top();
      std::vector<std::size_t> refs;
      for (const Option* o : pick) {
        e = dom().glb(e, o->degree);
        refs.push_back(o->entry);
      }
      bodies.emplace_back(dom().attenuate(c.alpha, e), std::move(refs));
      return true;
    });

    Atom head = sub.apply(c.head);
    auto conclude = [&](const Atom& target, QualValue d) {
      for (std::size_t i = 0; i < head.arity() && !dom().is_bottom(d); ++i)
        d = dom().glb(d, term_prox(prog.prox, target.args()[i], head.args()[i]));
      if (dom().is_bottom(d)) return;
      for (const auto& [b, refs] : bodies) {
        QualValue full = dom().glb(d, b);
        if (!dom().is_bottom(full)) emit(target, full, refs);
      }
    };

    if (fixed) {
      if (fixed->arity() != head.arity()) return;
      QualValue d0 = prog.prox.prox(fixed->predicate(), head.predicate());
      if (!dom().is_bottom(d0)) conclude(*fixed, d0);
      return;
    }
    for (const auto& [pred, d0] : prog.prox.neighbors(head.predicate())) {
      const SymbolInfo* info = prog.signature.lookup(pred);
      if (info && (info->category != SymbolCategory::Defined || info->arity != head.arity())) continue;
      std::vector<std::vector<Term>> targets;
      for (const Term& t : head.args()) {
        std::vector<Term> close;
        for (const Term& u : universe.terms())
          if (!dom().is_bottom(term_prox(prog.prox, u, t))) close.push_back(u);
        targets.push_back(std::move(close));
      }
      detail::for_each_choice(targets, [&](const std::vector<const Term*>& pick) {
        std::vector<Term> args;
        for (const Term* t : pick) args.push_back(*t);
        conclude(Atom::defined(pred, std::move(args)), d0);
        return true;
      });
    }
  }

  template <class F>
  void for_each_theta(const Clause& c, F&& f) const {
    std::set<std::string> vs = variables(c);
    std::vector<std::string> names(vs.begin(), vs.end());
    std::vector<std::vector<Term>> options(names.size(), universe.terms());
    detail::for_each_choice(options, [&](const std::vector<const Term*>& pick) {
      Bindings theta;
      for (std::size_t i = 0; i < names.size(); ++i) theta.emplace(names[i], *pick[i]);
      f(theta);
      return true;
    });
  }

  bool insert(Table& table, Entry e) {
    auto& slot = table[e.atom];
    for (std::size_t idx : slot)
      if (dom().leq(e.degree, entries[idx].degree)) return false;
    std::erase_if(slot, [&](std::size_t idx) { return dom().leq(entries[idx].degree, e.degree); });
    slot.push_back(entries.size());
    entries.push_back(std::move(e));
    return true;
  }

  void saturate(std::size_t max_height) {
    for (std::size_t layer = 1; layer <= max_height; ++layer) {
      const Table snapshot = best;
      bool changed = false;
      for (std::size_t ci = 0; ci < prog.clauses.size(); ++ci) {
        for_each_theta(prog.clauses[ci], [&](const Bindings& theta) {
          expand(ci, theta, snapshot, nullptr,
                 [&](const Atom& a, const QualValue& d, const std::vector<std::size_t>& refs) {
                   changed |= insert(best, Entry{a, d, layer, ci, theta, refs});
                 });
        });
      }
      if (!changed) {
        converged = true;
        return;
      }
      height = layer;
    }
  }

  // Candidate conclusions for an atom outside the table.
  std::vector<Entry> one_step(const Atom& a) const {
    std::vector<Entry> out;
    for (std::size_t ci = 0; ci < prog.clauses.size(); ++ci) {
      for_each_theta(prog.clauses[ci], [&](const Bindings& theta) {
        expand(ci, theta, best, &a, [&](const Atom& at, const QualValue& d, const std::vector<std::size_t>& refs) {
          out.push_back(Entry{at, d, height + 1, ci, theta, refs});
        });
      });
    }
    return out;
  }

  ProofTree build(const Entry& e, const QualValue& degree) const {
    const Clause& c = prog.clauses[e.clause];
    Substitution sub(e.theta);
    Atom head = sub.apply(c.head);
    ProofTree t{{e.atom, degree, ConstraintStore()}, RuleTag::SQDA, c.id, sub, {}};
    for (std::size_t i = 0; i < head.arity(); ++i) {
      Atom eq = Atom::equation(e.atom.args()[i], head.args()[i]);
      t.children.push_back({{eq, term_prox(prog.prox, eq.lhs(), eq.rhs()), ConstraintStore()}, RuleTag::SQEA, {}, {}, {}});
    }
    for (std::size_t j = 0; j < c.body.size(); ++j) {
      Atom b = sub.apply(c.body[j].atom);
      switch (b.kind()) {
        case Atom::Kind::Defined: {
          const Entry& child = entries[e.body[j]];
          t.children.push_back(build(child, child.degree));
          break;
        }
        case Atom::Kind::Equation:
          t.children.push_back({{b, term_prox(prog.prox, b.lhs(), b.rhs()), ConstraintStore()}, RuleTag::SQEA, {}, {}, {}});
          break;
        case Atom::Kind::Primitive:
          t.children.push_back({{b, dom().top(), ConstraintStore()}, RuleTag::SQPA, {}, {}, {}});
          break;
      }
    }
    return t;
  }
};

GroundOracle::GroundOracle(const Program& prog, TermUniverse universe, std::size_t max_height) {
  auto impl = std::make_shared<Impl>(prog, std::move(universe));
  impl->saturate(max_height);
  impl_ = std::move(impl);
}

std::vector<QualValue> GroundOracle::degrees_of(const Atom& atom) const {
  const Impl& m = *impl_;
  std::vector<QualValue> out;
  switch (atom.kind()) {
    case Atom::Kind::Equation: {
      QualValue d = term_prox(m.prog.prox, atom.lhs(), atom.rhs());
      if (!m.dom().is_bottom(d)) out.push_back(d);
      return out;
    }
    case Atom::Kind::Primitive:
      if (variables(atom).empty() && eval_ground(atom)) out.push_back(m.dom().top());
      return out;
    case Atom::Kind::Defined:
      break;
  }
  if (m.in_universe(atom)) {
    if (auto it = m.best.find(atom); it != m.best.end())
      for (std::size_t e : it->second) out.push_back(m.entries[e].degree);
    return out;
  }
  for (const auto& e : m.one_step(atom)) detail::insert_maximal(m.dom(), out, e.degree);
  return out;
}

bool GroundOracle::derivable(const Atom& atom, const QualValue& degree) const {
  const QualDomain& dom = impl_->dom();
  if (dom.is_bottom(degree)) return false;
  auto ds = degrees_of(atom);
  return std::any_of(ds.begin(), ds.end(), [&](const QualValue& d) { return dom.leq(degree, d); });
}

std::optional<ProofTree> GroundOracle::proof(const Atom& atom, const QualValue& degree) const {
  const Impl& m = *impl_;
  if (atom.kind() != Atom::Kind::Defined) {
    if (!derivable(atom, degree)) return std::nullopt;
    RuleTag tag = atom.kind() == Atom::Kind::Equation ? RuleTag::SQEA : RuleTag::SQPA;
    return ProofTree{{atom, degree, ConstraintStore()}, tag, {}, {}, {}};
  }
  if (m.in_universe(atom)) {
    auto it = m.best.find(atom);
    if (it == m.best.end()) return std::nullopt;
    for (std::size_t e : it->second)
      if (m.dom().leq(degree, m.entries[e].degree)) return m.build(m.entries[e], degree);
    return std::nullopt;
  }
  for (const auto& e : m.one_step(atom))
    if (m.dom().leq(degree, e.degree)) return m.build(e, degree);
  return std::nullopt;
}

std::vector<Atom> GroundOracle::atoms() const {
  std::vector<Atom> out;
  for (const auto& [a, slot] : impl_->best)
    if (!slot.empty()) out.push_back(a);
  return out;
}

std::size_t GroundOracle::height() const { return impl_->height; }
bool GroundOracle::converged() const { return impl_->converged; }
const TermUniverse& GroundOracle::universe() const { return impl_->universe; }

std::vector<GoalSolution> brute_ground_solutions(const Program& prog, const Goal& goal, const TermUniverse& universe) {
  GroundOracle oracle(prog, universe);
  const QualDomain& dom = prog.qdom;
  std::set<std::string> vs = goal.variables();
  std::vector<std::string> names(vs.begin(), vs.end());
  std::vector<std::vector<Term>> options(names.size(), universe.terms());
  std::vector<GoalSolution> out;
  detail::for_each_choice(options, [&](const std::vector<const Term*>& pick) {
    std::map<std::string, Term> eta;
    for (std::size_t i = 0; i < names.size(); ++i) eta.emplace(names[i], *pick[i]);
    Substitution sigma(eta);
    std::vector<std::vector<QualValue>> per_item;
    for (const GoalItem& item : goal.items) {
      std::vector<QualValue> ok;
      for (const QualValue& d : oracle.degrees_of(sigma.apply(item.atom)))
        if (!dom.is_bottom(d) && dom.threshold_ok(d, item.threshold)) ok.push_back(d);
      if (ok.empty()) return true;
      per_item.push_back(std::move(ok));
    }
    detail::for_each_choice(per_item, [&](const std::vector<const QualValue*>& degs) {
      GoalSolution s{sigma, {}, ConstraintStore()};
      for (std::size_t i = 0; i < goal.items.size(); ++i) s.mu.insert_or_assign(goal.items[i].qvar, *degs[i]);
      out.push_back(std::move(s));
      return true;
    });
    return true;
  });
  return out;
}

}  // namespace sqclp
