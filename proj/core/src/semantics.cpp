#include "sqclp/semantics.hpp"

#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sqclp {

using detail::Bindings;

std::string to_string(const QcAtom& phi) {
  return to_string(phi.atom) + "#" + to_string(phi.degree) + " <= " + to_string(phi.store);
}

Tristate is_observable(const QualDomain& dom, const QcAtom& phi) {
  if (dom.is_bottom(phi.degree)) return Tristate::False;
  return phi.store.satisfiable();
}

namespace {

// Store entailment Π′ ⊨ Πθ. Π's variables not touched by θ are first read as themselves, then
// existentially.
class StoreEntailment {
 public:
  Tristate check(const ConstraintStore& subject, const ConstraintStore& pattern, const Bindings& theta) {
    if (pattern.empty()) return Tristate::True;
    Substitution sub(theta);
    std::vector<Atom> wanted;
    wanted.reserve(pattern.atoms().size());
    for (const Atom& a : pattern.atoms()) wanted.push_back(sub.apply(a));

    const auto& have = subject.atoms();
    bool all_present = std::all_of(wanted.begin(), wanted.end(), [&](const Atom& a) {
      return std::find(have.begin(), have.end(), a) != have.end();
    });
    if (all_present) return Tristate::True;

    std::string key = to_string(subject) + "|";
    for (const Atom& a : wanted) key += to_string(a) + ";";
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    Tristate verdict = subject.entails_all(wanted);
    if (verdict != Tristate::True) {
      std::set<std::string> loose;
      for (const std::string& v : pattern.variables())
        if (!theta.contains(v)) loose.insert(v);
      if (!loose.empty()) {
        Constraint pi{{loose.begin(), loose.end()}, wanted, {}};
        Tristate ex = subject.entails(pi);
        verdict = ex == Tristate::True ? Tristate::True : Tristate::Unknown;
      }
    }
    cache_.emplace(std::move(key), verdict);
    return verdict;
  }

 private:
  std::unordered_map<std::string, Tristate> cache_;
};

Tristate qc_entails_with(StoreEntailment& se, const QualDomain& dom, const QcAtom& phi, const QcAtom& phi2) {
  Bindings theta;
  if (!detail::match(phi.atom, phi2.atom, theta)) return Tristate::False;
  if (!dom.leq(phi2.degree, phi.degree)) return Tristate::False;
  return se.check(phi2.store, phi.store, theta);
}

}  // namespace

Tristate qc_entails(const QualDomain& dom, const QcAtom& phi, const QcAtom& phi2) {
  StoreEntailment se;
  return qc_entails_with(se, dom, phi, phi2);
}

Tristate proximity_entails(const ProximityRelation& rel, const QcAtom& phi, const QcAtom& phi2) {
  const QualDomain& dom = rel.domain();
  if (phi.atom.kind() != phi2.atom.kind() || phi.atom.arity() != phi2.atom.arity()) return Tristate::False;
  if (!dom.leq(phi2.degree, phi.degree)) return Tristate::False;
  // θ is found by matching the pattern skeleton, ignoring constructor names.
  std::function<bool(const Term&, const Term&, Bindings&)> skel = [&](const Term& p, const Term& s, Bindings& th) {
    if (p.is_var()) {
      auto [it, fresh] = th.emplace(p.name(), s);
      return fresh || it->second == s;
    }
    if (p.kind() != s.kind()) return false;
    if (p.is_basic()) return p.value() == s.value();
    if (p.arity() != s.arity()) return false;
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (!skel(p.args()[i], s.args()[i], th)) return false;
    return true;
  };
  Bindings theta;
  for (std::size_t i = 0; i < phi.atom.arity(); ++i)
    if (!skel(phi.atom.args()[i], phi2.atom.args()[i], theta)) return Tristate::False;
  QualValue lambda = atom_prox(rel, phi2.atom, Substitution(theta).apply(phi.atom));
  if (dom.is_bottom(lambda) || !dom.leq(phi2.degree, lambda)) return Tristate::False;
  StoreEntailment se;
  return se.check(phi2.store, phi.store, theta);
}

Interpretation prune(const QualDomain& dom, std::vector<QcAtom> generators) {
  // Exact duplicates of atom and store first: keep maximal degrees only.
  std::vector<QcAtom> merged;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (auto& g : generators) {
    auto key = std::make_pair(to_string(g.atom), to_string(g.store));
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, merged.size());
      merged.push_back(std::move(g));
      continue;
    }
    QcAtom& prev = merged[it->second];
    if (dom.leq(prev.degree, g.degree) && prev.degree != g.degree) {
      prev.degree = g.degree;
    } else if (!dom.leq(g.degree, prev.degree)) {
      // Incomparable degrees on the same atom: both stay.
      merged.push_back(std::move(g));
    }
  }

  std::map<std::string, std::vector<std::size_t>> by_pred;
  for (std::size_t i = 0; i < merged.size(); ++i)
    by_pred[merged[i].atom.predicate() + "/" + std::to_string(merged[i].atom.arity())].push_back(i);

  StoreEntailment se;
  std::vector<bool> drop(merged.size(), false);
  for (const auto& [_, idx] : by_pred) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      std::size_t i = idx[a];
      for (std::size_t b = 0; b < idx.size() && !drop[i]; ++b) {
        if (a == b) continue;
        std::size_t j = idx[b];
        if (qc_entails_with(se, dom, merged[j], merged[i]) != Tristate::True) continue;
        if (j < i || qc_entails_with(se, dom, merged[i], merged[j]) != Tristate::True) drop[i] = true;
      }
    }
  }
  Interpretation out;
  for (std::size_t i = 0; i < merged.size(); ++i)
    if (!drop[i]) out.generators.push_back(std::move(merged[i]));
  return out;
}

Interpretation interpretation_union(const QualDomain& dom, const Interpretation& a, const Interpretation& b) {
  std::vector<QcAtom> all = a.generators;
  all.insert(all.end(), b.generators.begin(), b.generators.end());
  return prune(dom, std::move(all));
}

Interpretation interpretation_intersection(const QualDomain& dom, const Interpretation& a, const Interpretation& b) {
  auto ground = [](const Interpretation& i) {
    return std::all_of(i.generators.begin(), i.generators.end(),
                       [](const QcAtom& g) { return variables(g.atom).empty() && g.store.empty(); });
  };
  if (!ground(a) || !ground(b))
    throw std::invalid_argument("interpretation intersection needs ground, constraint-free generators");
  std::vector<QcAtom> out;
  for (const QcAtom& g : a.generators)
    for (const QcAtom& h : b.generators)
      if (g.atom == h.atom) {
        QualValue d = dom.glb(g.degree, h.degree);
        if (!dom.is_bottom(d)) out.push_back({g.atom, d, g.store});
      }
  return prune(dom, std::move(out));
}

Tristate valid_in(const Program& prog, const Interpretation& interp, const QcAtom& phi) {
  switch (phi.atom.kind()) {
    case Atom::Kind::Equation:
      return close_at_modulo(prog.prox, phi.degree, phi.store, phi.atom.lhs(), phi.atom.rhs());
    case Atom::Kind::Primitive:
      return phi.store.entails(phi.atom);
    case Atom::Kind::Defined:
      break;
  }
  StoreEntailment se;
  Tristate best = Tristate::False;
  for (const QcAtom& g : interp.generators) {
    Tristate t = qc_entails_with(se, prog.qdom, g, phi);
    if (t == Tristate::True) return t;
    if (t == Tristate::Unknown) best = t;
  }
  return best;
}

// ---------------------------------------------------------------------------------------------
// Term universe

TermUniverse::TermUniverse(std::vector<Term> terms) : terms_(std::move(terms)) {}

bool TermUniverse::contains(const Term& t) const {
  return std::find(terms_.begin(), terms_.end(), t) != terms_.end();
}

namespace {

void collect_constructors(const Term& t, std::map<std::string, std::size_t>& out) {
  if (!t.is_apply()) return;
  out.emplace(t.name(), t.arity());
  for (const Term& a : t.args()) collect_constructors(a, out);
}

void collect_constructors(const Atom& a, std::map<std::string, std::size_t>& out) {
  for (const Term& t : a.args()) collect_constructors(t, out);
}

}  // namespace

TermUniverse TermUniverse::build(const Program& prog, const ConstraintStore& store, const Options& opts) {
  std::map<std::string, std::size_t> ctors;
  for (const Clause& c : prog.clauses) {
    collect_constructors(c.head, ctors);
    for (const BodyItem& b : c.body) collect_constructors(b.atom, ctors);
  }
  for (const Atom& a : store.atoms()) collect_constructors(a, ctors);
  for (const auto& [name, info] : prog.signature.symbols())
    if (info.category == SymbolCategory::Constructor && !is_builtin_constructor(name)) ctors.emplace(name, info.arity);
  for (const auto& e : prog.prox.entries()) {
    for (const std::string* s : {&e.x, &e.y}) {
      const SymbolInfo* info = prog.signature.lookup(*s);
      if (info && info->category == SymbolCategory::Constructor) ctors.emplace(*s, info->arity);
    }
  }

  std::vector<Term> leaves;
  for (const auto& [name, arity] : ctors)
    if (arity == 0) leaves.push_back(Term::apply(name));
  if (opts.store_variables)
    for (const std::string& v : store.variables()) leaves.push_back(Term::variable(v));
  for (std::size_t i = 1; i <= opts.fresh_variables; ++i) leaves.push_back(Term::variable("_V" + std::to_string(i)));

  std::vector<Term> all = leaves;
  std::set<Term> seen(all.begin(), all.end());
  std::vector<Term> previous = leaves;  // terms of the last completed level and below
  for (std::size_t level = 1; level <= opts.depth; ++level) {
    std::vector<Term> fresh;
    for (const auto& [name, arity] : ctors) {
      if (arity == 0) continue;
      std::vector<std::vector<Term>> options(arity, previous);
      detail::for_each_choice(options, [&](const std::vector<const Term*>& pick) {
        std::vector<Term> args;
        args.reserve(pick.size());
        for (const Term* t : pick) args.push_back(*t);
        Term t = Term::apply(name, std::move(args));
        if (seen.insert(t).second) fresh.push_back(t);
        return true;
      });
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
    previous = all;
  }
  return TermUniverse(std::move(all));
}

TermUniverse TermUniverse::ground(const Program& prog, std::size_t depth) {
  return build(prog, ConstraintStore(), {depth, 0, false});
}

// ---------------------------------------------------------------------------------------------
// Immediate consequences

namespace {

class ConsequenceBuilder {
 public:
  ConsequenceBuilder(const Program& prog, const Interpretation& interp, const ConstraintStore& store,
                     const TermUniverse& universe)
      : prog_(prog), dom_(prog.qdom), store_(store), universe_(universe) {
    for (const QcAtom& g : interp.generators) index_[g.atom.predicate()].push_back(&g);
  }

  void run(const Clause& clause, const std::string& target, std::vector<QcAtom>& out) {
    QualValue d0 = prog_.prox.prox(target, clause.head.predicate());
    if (dom_.is_bottom(d0)) return;

    // Variables of defined body atoms first, so those atoms prune early.
    std::vector<std::string> order;
    auto add_vars = [&](const Atom& a) {
      std::set<std::string> vs = variables(a);
      std::vector<std::string> sorted(vs.begin(), vs.end());
      for (const std::string& v : sorted)
        if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    };
    for (const BodyItem& b : clause.body)
      if (b.atom.kind() == Atom::Kind::Defined) add_vars(b.atom);
    for (const BodyItem& b : clause.body) add_vars(b.atom);
    add_vars(clause.head);

    // checks[k]: body items whose variables are all bound once order[0..k) is assigned.
    std::vector<std::vector<std::size_t>> checks(order.size() + 1);
    for (std::size_t j = 0; j < clause.body.size(); ++j) {
      std::size_t last = 0;
      for (const std::string& v : variables(clause.body[j].atom)) {
        auto pos = std::find(order.begin(), order.end(), v) - order.begin();
        last = std::max(last, static_cast<std::size_t>(pos) + 1);
      }
      checks[last].push_back(j);
    }

    std::vector<std::vector<QualValue>> body_options(clause.body.size());
    Bindings theta;
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      Substitution sub(theta);
      for (std::size_t j : checks[k]) {
        body_options[j] = body_degrees(clause.body[j], sub);
        if (body_options[j].empty()) return;
      }
      if (k == order.size()) {
        emit(clause, target, d0, sub, body_options, out);
        return;
      }
      for (const Term& u : universe_.terms()) {
        theta.insert_or_assign(order[k], u);
        assign(k + 1);
      }
      theta.erase(order[k]);
    };
    assign(0);
  }

 private:
  std::vector<QualValue> body_degrees(const BodyItem& item, const Substitution& sub) {
    Atom a = sub.apply(item.atom);
    std::string key = to_string(a) + "#" + to_string(item.threshold);
    if (auto it = body_cache_.find(key); it != body_cache_.end()) return it->second;
    std::vector<QualValue> found;
    auto offer = [&](const QualValue& e) {
      if (!dom_.is_bottom(e) && dom_.threshold_ok(e, item.threshold)) detail::insert_maximal(dom_, found, e);
    };
    switch (a.kind()) {
      case Atom::Kind::Equation:
        offer(prox_degree_modulo(prog_.prox, store_, a.lhs(), a.rhs()).degree);
        break;
      case Atom::Kind::Primitive:
        if (store_.entails(a) == Tristate::True) offer(dom_.top());
        break;
      case Atom::Kind::Defined:
        if (auto it = index_.find(a.predicate()); it != index_.end()) {
          for (const QcAtom* g : it->second) {
            Bindings th;
            if (!detail::match(g->atom, a, th)) continue;
            if (entail_.check(store_, g->store, th) == Tristate::True) offer(g->degree);
          }
        }
        break;
    }
    body_cache_.emplace(std::move(key), found);
    return found;
  }

  const std::vector<std::pair<Term, QualValue>>& targets(const Term& t) {
    std::string key = to_string(t);
    if (auto it = target_cache_.find(key); it != target_cache_.end()) return it->second;
    std::vector<std::pair<Term, QualValue>> out;
    for (const Term& u : universe_.terms()) {
      QualValue d = prox_degree_modulo(prog_.prox, store_, u, t).degree;
      if (!dom_.is_bottom(d)) out.emplace_back(u, d);
    }
    return target_cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  void emit(const Clause& clause, const std::string& target, const QualValue& d0, const Substitution& sub,
            const std::vector<std::vector<QualValue>>& body_options, std::vector<QcAtom>& out) {
    std::vector<QualValue> body_best;
    detail::for_each_choice(body_options, [&](const std::vector<const QualValue*>& pick) {
      QualValue e = dom_.top();
      for (const QualValue* v : pick) e = dom_.glb(e, *v);
      detail::insert_maximal(dom_, body_best, dom_.attenuate(clause.alpha, e));
      return true;
    });

    std::vector<std::vector<std::pair<Term, QualValue>>> arg_options;
    for (const Term& t : clause.head.args()) arg_options.push_back(targets(sub.apply(t)));
    detail::for_each_choice(arg_options, [&](const std::vector<const std::pair<Term, QualValue>*>& pick) {
      QualValue d = d0;
      std::vector<Term> args;
      for (const auto* p : pick) {
        d = dom_.glb(d, p->second);
        args.push_back(p->first);
      }
      if (dom_.is_bottom(d)) return true;
      Atom head = Atom::defined(target, std::move(args));
      for (const QualValue& b : body_best) {
        QualValue full = dom_.glb(d, b);
        if (!dom_.is_bottom(full)) out.push_back({head, full, store_});
      }
      return true;
    });
  }

  const Program& prog_;
  const QualDomain& dom_;
  const ConstraintStore& store_;
  const TermUniverse& universe_;
  std::map<std::string, std::vector<const QcAtom*>> index_;
  std::unordered_map<std::string, std::vector<QualValue>> body_cache_;
  std::unordered_map<std::string, std::vector<std::pair<Term, QualValue>>> target_cache_;
  StoreEntailment entail_;
};

}  // namespace

std::vector<QcAtom> immediate_consequence(const Program& prog, const Interpretation& interp, const Clause& clause,
                                          const std::string& target_pred, const ConstraintStore& store,
                                          const TermUniverse& universe) {
  std::vector<QcAtom> out;
  ConsequenceBuilder builder(prog, interp, store, universe);
  builder.run(clause, target_pred, out);
  return out;
}

Interpretation tp_step(const Program& prog, const Interpretation& interp, const ConstraintStore& store,
                       const TermUniverse& universe) {
  std::vector<QcAtom> out;
  ConsequenceBuilder builder(prog, interp, store, universe);
  for (const Clause& c : prog.clauses)
    for (const auto& [target, _] : prog.prox.neighbors(c.head.predicate())) {
      const SymbolInfo* info = prog.signature.lookup(target);
      if (info && (info->category != SymbolCategory::Defined || info->arity != c.head.arity())) continue;
      builder.run(c, target, out);
    }
  return prune(prog.qdom, std::move(out));
}

LfpResult tp_lfp(const Program& prog, const ConstraintStore& store, const TermUniverse& universe,
                 std::size_t max_iters) {
  LfpResult res;
  Interpretation current;
  for (std::size_t k = 0; k < max_iters; ++k) {
    Interpretation next = tp_step(prog, current, store, universe);
    ++res.iterations;
    bool stable = std::all_of(next.generators.begin(), next.generators.end(),
                              [&](const QcAtom& g) { return valid_in(prog, current, g) == Tristate::True; });
    if (stable) {
      res.converged = true;
      break;
    }
    current = interpretation_union(prog.qdom, current, next);
    res.iterates.push_back(current);
  }
  res.model = current;
  return res;
}

Tristate is_prefixpoint(const Program& prog, const Interpretation& interp, const ConstraintStore& store,
                        const TermUniverse& universe) {
  Interpretation next = tp_step(prog, interp, store, universe);
  Tristate verdict = Tristate::True;
  for (const QcAtom& g : next.generators) {
    verdict = tri_and(verdict, valid_in(prog, interp, g));
    if (verdict == Tristate::False) break;
  }
  return verdict;
}

// ---------------------------------------------------------------------------------------------
// Proof trees

std::string to_string(RuleTag r) {
  switch (r) {
    case RuleTag::SQDA: return "SQDA";
    case RuleTag::SQEA: return "SQEA";
    case RuleTag::SQPA: return "SQPA";
  }
  return "?";
}

namespace {

Tristate check_node(const Program& prog, const ProofTree& t) {
  const QualDomain& dom = prog.qdom;
  const QcAtom& phi = t.node;
  if (!dom.contains(phi.degree)) throw MalformedProof("degree outside the qualification domain: " + to_string(phi));
  const Atom::Kind kind = phi.atom.kind();
  if (dom.is_bottom(phi.degree)) return Tristate::False;

  switch (t.rule) {
    case RuleTag::SQEA:
      if (kind != Atom::Kind::Equation) throw MalformedProof("SQEA node is not an equation: " + to_string(phi.atom));
      if (!t.children.empty()) throw MalformedProof("SQEA node with children");
      return close_at_modulo(prog.prox, phi.degree, phi.store, phi.atom.lhs(), phi.atom.rhs());
    case RuleTag::SQPA:
      if (kind != Atom::Kind::Primitive) throw MalformedProof("SQPA node is not a primitive atom: " + to_string(phi.atom));
      if (!t.children.empty()) throw MalformedProof("SQPA node with children");
      return phi.store.entails(phi.atom);
    case RuleTag::SQDA:
      break;
  }

  if (kind != Atom::Kind::Defined) throw MalformedProof("SQDA node is not a defined atom: " + to_string(phi.atom));
  const Clause* clause = prog.clause(t.clause_id);
  if (!clause) throw MalformedProof("unknown clause id '" + t.clause_id + "'");
  const std::size_t n = clause->head.arity();
  const std::size_t m = clause->body.size();
  if (phi.atom.arity() != n) throw MalformedProof("arity differs from clause " + clause->id);
  if (t.children.size() != n + m)
    throw MalformedProof("clause " + clause->id + " needs " + std::to_string(n + m) + " premises, got " +
                         std::to_string(t.children.size()));

  Tristate verdict = Tristate::True;
  QualValue d0 = prog.prox.prox(phi.atom.predicate(), clause->head.predicate());
  if (dom.is_bottom(d0) || !dom.leq(phi.degree, d0)) return Tristate::False;

  Atom head = t.theta.apply(clause->head);
  for (std::size_t i = 0; i < n; ++i) {
    const ProofTree& c = t.children[i];
    if (c.rule != RuleTag::SQEA) throw MalformedProof("premise " + std::to_string(i + 1) + " must be an equation");
    if (!(c.node.store == phi.store)) return Tristate::False;
    Atom expected = Atom::equation(phi.atom.args()[i], head.args()[i]);
    if (!(c.node.atom == expected)) return Tristate::False;
    if (!dom.leq(phi.degree, c.node.degree)) return Tristate::False;
    verdict = tri_and(verdict, check_node(prog, c));
    if (verdict == Tristate::False) return verdict;
  }
  for (std::size_t j = 0; j < m; ++j) {
    const ProofTree& c = t.children[n + j];
    const BodyItem& item = clause->body[j];
    if (!(c.node.store == phi.store)) return Tristate::False;
    if (!(c.node.atom == t.theta.apply(item.atom))) return Tristate::False;
    if (!dom.threshold_ok(c.node.degree, item.threshold)) return Tristate::False;
    if (!dom.leq(phi.degree, dom.attenuate(clause->alpha, c.node.degree))) return Tristate::False;
    verdict = tri_and(verdict, check_node(prog, c));
    if (verdict == Tristate::False) return verdict;
  }
  return verdict;
}

void count(const ProofTree& t, ProofStats& s) {
  ++s.size;
  if (t.rule == RuleTag::SQDA) ++s.defined_steps;
  for (const ProofTree& c : t.children) count(c, s);
}

}  // namespace

Tristate check_proof(const Program& prog, const ProofTree& tree) {
  Tristate obs = is_observable(prog.qdom, tree.node);
  if (obs == Tristate::False) return obs;
  return tri_and(obs, check_node(prog, tree));
}

ProofStats proof_stats(const ProofTree& tree) {
  ProofStats s;
  count(tree, s);
  return s;
}

}  // namespace sqclp
