#include "search.hpp"

#include "support.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace sqclp::search {

namespace {

// Proof under construction; atoms still mention search variables.
struct PNode {
  Atom atom;
  RuleTag rule;
  const Clause* clause = nullptr;
  std::map<std::string, std::string> renaming;  // clause variable -> search variable
  QualValue d0;
  std::vector<std::shared_ptr<const PNode>> children;
};
using PPtr = std::shared_ptr<const PNode>;

std::shared_ptr<PNode> leaf_node(const Atom& a, RuleTag rule, const QualValue& top) {
  return std::make_shared<PNode>(PNode{a, rule, nullptr, {}, top, {}});
}

using Acceptor = std::function<bool(const QualValue&)>;
using DegreeK = std::function<bool(const QualValue&)>;
using NodeK = std::function<bool(PPtr, const QualValue&)>;

bool internal_name(const std::string& v) { return v.find('#') != std::string::npos; }

std::size_t nesting(const Term& t) {
  std::size_t n = 0;
  if (t.is_apply())
    for (const Term& a : t.args()) n = std::max(n, nesting(a) + 1);
  return n;
}

class Engine {
 public:
  Engine(const Program& prog, const Query& q, std::size_t limit, const std::function<bool(const Answer&)>& out)
      : prog_(prog), dom_(prog.qdom), query_(q), limit_(limit), out_(out), store_(q.store) {
    for (const auto& [name, info] : prog.signature.symbols()) {
      if (info.category != SymbolCategory::Constructor) continue;
      for (const auto& [partner, deg] : prog.prox.neighbors(name))
        if (partner != name) distinct_partners_ = true;
    }
  }

  Report run() {
    prove_goal(0, {});
    return report_;
  }

 private:
  // ---- bindings, links and undo ----------------------------------------------------------

  struct Mark {
    std::size_t trail, frozen, links, splits;
    ConstraintStore store;
  };

  Mark mark() const { return {trail_.size(), frozen_trail_.size(), links_.size(), same_splits_.size(), store_}; }

  void undo(const Mark& m) {
    while (trail_.size() > m.trail) {
      bound_.erase(trail_.back());
      trail_.pop_back();
    }
    while (frozen_trail_.size() > m.frozen) {
      frozen_.erase(frozen_trail_.back());
      frozen_trail_.pop_back();
    }
    links_.resize(m.links);
    same_splits_.resize(m.splits);
    store_ = m.store;
  }

  bool bindable(const std::string& v) const {
    if (bound_.contains(v) || frozen_.contains(v)) return false;
    return internal_name(v) || query_.bindable.contains(v);
  }

  void bind(const std::string& v, Term t) {
    bound_.insert_or_assign(v, std::move(t));
    trail_.push_back(v);
  }

  void freeze(const std::string& v) {
    if (frozen_.insert(v).second) frozen_trail_.push_back(v);
  }

  Term deref(Term t) const {
    while (t.is_var()) {
      auto it = bound_.find(t.name());
      if (it == bound_.end()) break;
      t = it->second;
    }
    return t;
  }

  Term resolve(const Term& t) const {
    Term d = deref(t);
    if (!d.is_apply() || d.ground()) return d;
    std::vector<Term> args;
    args.reserve(d.arity());
    for (const Term& a : d.args()) args.push_back(resolve(a));
    return Term::apply(d.name(), std::move(args));
  }

  Atom resolve(const Atom& a) const {
    std::vector<Term> args;
    for (const Term& t : a.args()) args.push_back(resolve(t));
    return a.with_args(std::move(args));
  }

  bool open_var(const Term& t) const { return t.is_var() && bindable(t.name()); }

  // S-close copies of t: constructors replaced by neighbours, open variables by fresh ones linked
  // to them. Identity skeleton first, then by decreasing degree.
  struct Variant {
    Term term;
    QualValue degree;
    std::vector<std::pair<std::string, std::string>> links;
  };

  std::vector<Variant> variants(const Term& t, bool fresh_links) {
    Term d = deref(t);
    if (d.is_var()) {
      if (fresh_links && open_var(d)) {
        std::string f = "#F" + std::to_string(++counter_);
        return {{Term::variable(f), dom_.top(), {{f, d.name()}}}};
      }
      return {{d, dom_.top(), {}}};
    }
    if (d.is_basic()) return {{d, dom_.top(), {}}};
    std::vector<std::vector<Variant>> per_arg;
    for (const Term& a : d.args()) per_arg.push_back(variants(a, fresh_links));
    std::vector<Variant> out;
    for (const auto& [name, deg] : prog_.prox.neighbors(d.name())) {
      const SymbolInfo* info = prog_.signature.lookup(name);
      if (name != d.name() && (!info || info->category != SymbolCategory::Constructor || info->arity != d.arity()))
        continue;
      detail::for_each_choice(per_arg, [&](const std::vector<const Variant*>& pick) {
        Variant v{Term::apply(name), deg, {}};
        std::vector<Term> args;
        for (const Variant* p : pick) {
          args.push_back(p->term);
          v.degree = dom_.glb(v.degree, p->degree);
          v.links.insert(v.links.end(), p->links.begin(), p->links.end());
        }
        v.term = Term::apply(name, std::move(args));
        out.push_back(std::move(v));
        return true;
      });
    }
    // Repeatedly move the first maximal remaining variant forward.
    for (std::size_t i = 1; i < out.size(); ++i) {
      std::size_t best = i;
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (dom_.leq(out[best].degree, out[j].degree) && out[best].degree != out[j].degree) best = j;
      std::rotate(out.begin() + i, out.begin() + best, out.begin() + best + 1);
    }
    return out;
  }

  bool occurs_resolved(const std::string& v, const Term& t) const { return occurs(v, resolve(t)); }

  // ---- weak unification modulo the store -----------------------------------------------

  bool unify(const Term& a0, const Term& b0, const QualValue& deg, const Acceptor& acc, const DegreeK& k) {
    Term a = deref(a0);
    Term b = deref(b0);
    if (a == b) return k(deg);
    if (open_var(a)) return bind_var(a.name(), b, deg, acc, k);
    if (open_var(b)) return bind_var(b.name(), a, deg, acc, k);
    if (a.is_var() || b.is_var()) {
      Term na = a.is_var() ? store_.normal_form(a) : a;
      Term nb = b.is_var() ? store_.normal_form(b) : b;
      if (na.is_var() || nb.is_var()) return na == nb ? k(deg) : true;
      return unify(na, nb, deg, acc, k);
    }
    if (!a.is_apply() || !b.is_apply() || a.arity() != b.arity()) return true;
    QualValue d = dom_.glb(deg, prog_.prox.prox(a.name(), b.name()));
    if (dom_.is_bottom(d) || !acc(d)) return true;
    return unify_args(a.args(), b.args(), 0, d, acc, k);
  }

  bool unify_args(const std::vector<Term>& xs, const std::vector<Term>& ys, std::size_t i, const QualValue& deg,
                  const Acceptor& acc, const DegreeK& k) {
    if (i == xs.size()) return k(deg);
    return unify(xs[i], ys[i], deg, acc,
                 [&](const QualValue& d) { return unify_args(xs, ys, i + 1, d, acc, k); });
  }

  bool bind_var(const std::string& v, const Term& t, const QualValue& deg, const Acceptor& acc, const DegreeK& k) {
    if (open_var(t)) {
      Mark m = mark();
      links_.emplace_back(v, t.name());
      bool go = k(deg);
      undo(m);
      return go;
    }
    if (occurs_resolved(v, t)) return true;
    for (const Variant& var : variants(t, true)) {
      QualValue d = dom_.glb(deg, var.degree);
      if (dom_.is_bottom(d) || !acc(d)) continue;
      Mark m = mark();
      bind(v, var.term);
      links_.insert(links_.end(), var.links.begin(), var.links.end());
      bool go = k(d);
      undo(m);
      if (!go) return false;
    }
    return true;
  }

  // ---- rules -------------------------------------------------------------------------------

  bool prove(const Atom& atom, std::size_t depth, const Acceptor& acc, const NodeK& k) {
    switch (atom.kind()) {
      case Atom::Kind::Equation:
        return unify(atom.lhs(), atom.rhs(), dom_.top(), acc, [&](const QualValue& d) {
          return k(leaf_node(atom, RuleTag::SQEA, dom_.top()), d);
        });
      case Atom::Kind::Primitive:
        return prove_primitive(atom, acc, k);
      case Atom::Kind::Defined:
        return prove_defined(atom, depth, acc, k);
    }
    return true;
  }

  // op_+, op_*, op_- with a bindable result and numeric inputs: bind the result.
  bool try_functional(const Atom& r) {
    if (r.primitive_op() != Primitive::Add && r.primitive_op() != Primitive::Mul &&
        r.primitive_op() != Primitive::Sub)
      return false;
    const Term& out = r.args()[2];
    if (!open_var(out)) return false;
    Term x = store_.normal_form(r.args()[0]);
    Term y = store_.normal_form(r.args()[1]);
    if (!x.is_basic() || !y.is_basic()) return false;
    Rational v = r.primitive_op() == Primitive::Add   ? Rational(x.value() + y.value())
                 : r.primitive_op() == Primitive::Mul ? Rational(x.value() * y.value())
                                                      : Rational(x.value() - y.value());
    bind(out.name(), Term::number(v));
    return true;
  }

  bool prove_primitive(const Atom& atom, const Acceptor& acc, const NodeK& k) {
    if (!acc(dom_.top())) return true;
    Mark m = mark();
    Atom r = resolve(atom);
    if (try_functional(r)) r = resolve(atom);
    std::set<std::string> open;
    for (const std::string& v : variables(r))
      if (bindable(v)) open.insert(v);

    PPtr leaf = leaf_node(atom, RuleTag::SQPA, dom_.top());

    bool go = true;
    if (open.empty()) {
      Tristate t = store_.entails(r);
      if (t == Tristate::True) {
        go = k(leaf, dom_.top());
      } else if (query_.grow_store) {
        go = extend_store(r, {}, leaf, k);
      } else if (t == Tristate::Unknown) {
        report_.unknown = true;
      }
    } else if (query_.grow_store) {
      go = extend_store(r, open, leaf, k);
    }
    undo(m);
    return go;
  }

  bool extend_store(const Atom& r, const std::set<std::string>& open, const PPtr& leaf, const NodeK& k) {
    ConstraintStore next = store_.with({r});
    Tristate sat = next.satisfiable();
    if (sat == Tristate::Unknown) report_.unknown = true;
    if (sat != Tristate::True) return true;
    for (const std::string& v : open) freeze(v);
    store_ = std::move(next);
    return k(leaf, dom_.top());
  }

  bool prove_defined(const Atom& atom, std::size_t depth, const Acceptor& acc, const NodeK& k) {
    if (depth >= limit_) {
      report_.cutoff = true;
      return true;
    }
    for (const auto& [pred, d0] : prog_.prox.neighbors(atom.predicate())) {
      if (!acc(d0)) continue;
      for (const Clause& c : prog_.clauses) {
        if (c.head.predicate() != pred || c.head.arity() != atom.arity()) continue;
        if (!try_clause(atom, c, d0, depth, acc, k)) return false;
      }
    }
    return true;
  }

  bool out_of_steps() {
    if (query_.max_steps == 0 || ++steps_ <= query_.max_steps) return false;
    report_.exhausted = true;
    return true;
  }

  bool try_clause(const Atom& atom, const Clause& c, const QualValue& d0, std::size_t depth, const Acceptor& acc,
                  const NodeK& k) {
    if (out_of_steps()) return false;
    std::map<std::string, std::string> renaming;
    std::map<std::string, Term> ren_terms;
    std::string suffix = "#" + std::to_string(++counter_);
    for (const std::string& v : variables(c)) {
      renaming.emplace(v, v + suffix);
      ren_terms.emplace(v, Term::variable(v + suffix));
    }
    Substitution ren(ren_terms);
    Atom head = ren.apply(c.head);
    std::vector<Atom> body;
    for (const BodyItem& b : c.body) body.push_back(ren.apply(b.atom));

    std::vector<PPtr> eqs;
    for (std::size_t i = 0; i < atom.arity(); ++i) {
      eqs.push_back(leaf_node(Atom::equation(atom.args()[i], head.args()[i]), RuleTag::SQEA, dom_.top()));
    }

    return unify_args(atom.args(), head.args(), 0, d0, acc, [&](const QualValue& d) {
      return prove_body(atom, c, renaming, body, 0, d0, d, dom_.top(), eqs, depth, acc, k);
    });
  }

  bool prove_body(const Atom& atom, const Clause& c, const std::map<std::string, std::string>& renaming,
                  const std::vector<Atom>& body, std::size_t j, const QualValue& d0, const QualValue& partial,
                  const QualValue& body_glb, const std::vector<PPtr>& children, std::size_t depth,
                  const Acceptor& acc, const NodeK& k) {
    if (j == body.size()) {
      auto node = std::make_shared<PNode>(PNode{atom, RuleTag::SQDA, &c, renaming, d0, children});
      return k(node, dom_.glb(partial, dom_.attenuate(c.alpha, body_glb)));
    }
    const Threshold& w = c.body[j].threshold;
    Acceptor sub = [&](const QualValue& e) {
      return !dom_.is_bottom(e) && dom_.threshold_ok(e, w) &&
             acc(dom_.glb(partial, dom_.attenuate(c.alpha, dom_.glb(body_glb, e))));
    };
    return prove(body[j], depth + 1, sub, [&](PPtr child, const QualValue& e) {
      std::vector<PPtr> next = children;
      next.push_back(std::move(child));
      return prove_body(atom, c, renaming, body, j + 1, d0, partial, dom_.glb(body_glb, e), next, depth, acc, k);
    });
  }

  bool prove_goal(std::size_t i, std::vector<PPtr> proofs) {
    if (i == query_.atoms.size()) return close_links(proofs);
    Acceptor acc = [&](const QualValue& d) {
      if (dom_.is_bottom(d)) return false;
      if (query_.target && !dom_.leq(*query_.target, d)) return false;
      return i >= query_.thresholds.size() || dom_.threshold_ok(d, query_.thresholds[i]);
    };
    return prove(query_.atoms[i], 0, acc, [&](PPtr node, const QualValue&) {
      std::vector<PPtr> next = proofs;
      next.push_back(std::move(node));
      return prove_goal(i + 1, std::move(next));
    });
  }

  // ---- answers -----------------------------------------------------------------------------

  // Linked variables left open get S-close copies of their partner's value. A link between two
  // open variables becomes equality, or a pair of proximate constructors with linked arguments.
  bool close_links(const std::vector<PPtr>& proofs) {
    if (out_of_steps()) return false;
    for (std::size_t i = 0; i < links_.size(); ++i) {
      const auto& [x, y] = links_[i];
      Term a = deref(Term::variable(x));
      Term b = deref(Term::variable(y));
      if (a == b) continue;
      bool oa = open_var(a), ob = open_var(b);
      if (!oa && !ob) {
        // Both sides got values on separate paths; they still have to be close.
        if (!dom_.is_bottom(term_prox(prog_.prox, resolve(a), resolve(b)))) continue;
        Acceptor any = [&](const QualValue& d) { return !dom_.is_bottom(d); };
        auto settled = links_[i];
        return unify(a, b, dom_.top(), any, [&](const QualValue&) {
          links_[i] = {settled.first, settled.first};
          bool go = close_links(proofs);
          links_[i] = settled;
          return go;
        });
      }
      if (oa == ob) continue;
      const std::string& v = oa ? a.name() : b.name();
      Term value = resolve(oa ? b : a);
      if (occurs(v, value)) return true;
      // Past the expansion bound copies share the partner's variables.
      std::size_t level = std::max(link_level(x), link_level(y)) + 1;
      bool fresh = query_.answer_depth > 0 && level <= max_link_level();
      for (const Variant& var : variants(value, fresh)) {
        Mark m = mark();
        bind(v, var.term);
        for (const auto& [f, partner] : var.links) {
          link_level_.emplace(f, level);
          links_.emplace_back(f, partner);
        }
        bool go = close_links(proofs);
        undo(m);
        if (!go) return false;
      }
      return true;
    }
    for (const auto& [x, y] : links_) {
      Term a = deref(Term::variable(x));
      Term b = deref(Term::variable(y));
      if (a == b || !open_var(a) || !open_var(b)) continue;
      std::size_t level = std::max(link_level(x), link_level(y));
      Mark m = mark();
      // Keep query variables visible in answers.
      if (internal_name(a.name())) bind(a.name(), b);
      else bind(b.name(), a);
      bool go = close_links(proofs);
      undo(m);
      if (!go || level >= max_link_level() || !distinct_partners_ || !in_answer(a.name(), b.name())) return go;
      return split_link(a.name(), b.name(), level + 1, proofs);
    }
    // A same-head split whose two sides ended up equal only repeats the equated answer.
    for (const auto& [x, y] : same_splits_)
      if (resolve(Term::variable(x)) == resolve(Term::variable(y))) return true;
    return emit(proofs);
  }

  // Constants sit one split below the deepest answer position.
  std::size_t max_link_level() const { return query_.answer_depth + 1; }

  // Whether x or y shows up in the current answer bindings.
  bool in_answer(const std::string& x, const std::string& y) const {
    for (const std::string& v : query_.bindable) {
      Term t = resolve(Term::variable(v));
      if (occurs(x, t) || occurs(y, t)) return true;
    }
    return false;
  }

  bool answer_too_deep() const {
    for (const std::string& v : query_.bindable)
      if (nesting(resolve(Term::variable(v))) > query_.answer_depth) return true;
    return false;
  }

  std::size_t link_level(const std::string& v) const {
    auto it = link_level_.find(v);
    return it == link_level_.end() ? 0 : it->second;
  }

  bool split_link(const std::string& x, const std::string& y, std::size_t level, const std::vector<PPtr>& proofs) {
    for (const auto& [name, info] : prog_.signature.symbols()) {
      if (info.category != SymbolCategory::Constructor || is_builtin_constructor(name)) continue;
      for (const auto& [partner, deg] : prog_.prox.neighbors(name)) {
        if (partner == name && info.arity == 0) continue;  // same as equating
        const SymbolInfo* other = prog_.signature.lookup(partner);
        if (!other || other->category != SymbolCategory::Constructor || other->arity != info.arity) continue;
        Mark m = mark();
        std::vector<Term> lhs, rhs;
        for (std::size_t i = 0; i < info.arity; ++i) {
          std::string f = "#F" + std::to_string(++counter_);
          std::string g = "#F" + std::to_string(++counter_);
          link_level_.emplace(f, level);
          link_level_.emplace(g, level);
          links_.emplace_back(f, g);
          lhs.push_back(Term::variable(f));
          rhs.push_back(Term::variable(g));
        }
        bind(x, Term::apply(name, std::move(lhs)));
        bind(y, Term::apply(partner, std::move(rhs)));
        if (partner == name) same_splits_.emplace_back(x, y);
        bool go = answer_too_deep() || close_links(proofs);
        undo(m);
        if (!go) return false;
      }
    }
    return true;
  }

  struct Finisher {
    const Engine& e;
    std::map<std::string, std::string> names;
    std::set<std::string> taken;
    ConstraintStore store;
    bool ok = true;

    Term finish(const Term& t) {
      Term r = e.resolve(t);
      std::map<std::string, Term> ren;
      for (const std::string& v : variables(r)) {
        if (!internal_name(v)) continue;
        auto it = names.find(v);
        if (it == names.end()) {
          std::string fresh;
          std::size_t n = names.size();
          do fresh = "_G" + std::to_string(++n);
          while (taken.contains(fresh));
          taken.insert(fresh);
          it = names.emplace(v, fresh).first;
        }
        ren.emplace(v, Term::variable(it->second));
      }
      return ren.empty() ? r : Substitution(ren).apply(r);
    }

    Atom finish(const Atom& a) {
      std::vector<Term> args;
      for (const Term& t : a.args()) args.push_back(finish(t));
      return a.with_args(std::move(args));
    }

    ProofTree build(const PNode& n) {
      const QualDomain& dom = e.dom_;
      ProofTree t{{finish(n.atom), dom.bottom(), store}, n.rule, {}, {}, {}};
      switch (n.rule) {
        case RuleTag::SQEA:
          t.node.degree = prox_degree_modulo(e.prog_.prox, store, t.node.atom.lhs(), t.node.atom.rhs()).degree;
          break;
        case RuleTag::SQPA:
          t.node.degree = store.entails(t.node.atom) == Tristate::True ? dom.top() : dom.bottom();
          break;
        case RuleTag::SQDA: {
          t.clause_id = n.clause->id;
          std::map<std::string, Term> theta;
          for (const auto& [orig, renamed] : n.renaming) theta.emplace(orig, finish(Term::variable(renamed)));
          t.theta = Substitution(theta);
          QualValue d = n.d0;
          QualValue body = dom.top();
          const std::size_t arity = n.atom.arity();
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            t.children.push_back(build(*n.children[i]));
            const QualValue& cd = t.children.back().node.degree;
            if (i < arity) {
              d = dom.glb(d, cd);
            } else {
              if (!dom.threshold_ok(cd, n.clause->body[i - arity].threshold)) ok = false;
              body = dom.glb(body, cd);
            }
          }
          t.node.degree = dom.glb(d, dom.attenuate(n.clause->alpha, body));
          break;
        }
      }
      if (dom.is_bottom(t.node.degree)) ok = false;
      return t;
    }

    // Root degree of build(n) without materializing the tree.
    QualValue degree(const PNode& n) {
      const QualDomain& dom = e.dom_;
      QualValue out = dom.bottom();
      switch (n.rule) {
        case RuleTag::SQEA:
          out = prox_degree_modulo(e.prog_.prox, store, finish(n.atom.lhs()), finish(n.atom.rhs())).degree;
          break;
        case RuleTag::SQPA:
          out = store.entails(finish(n.atom)) == Tristate::True ? dom.top() : dom.bottom();
          break;
        case RuleTag::SQDA: {
          QualValue d = n.d0;
          QualValue body = dom.top();
          const std::size_t arity = n.atom.arity();
          for (std::size_t i = 0; i < n.children.size() && ok; ++i) {
            QualValue cd = degree(*n.children[i]);
            if (i < arity) {
              d = dom.glb(d, cd);
            } else {
              if (!dom.threshold_ok(cd, n.clause->body[i - arity].threshold)) ok = false;
              body = dom.glb(body, cd);
            }
          }
          out = dom.glb(d, dom.attenuate(n.clause->alpha, body));
          break;
        }
      }
      if (dom.is_bottom(out)) ok = false;
      return out;
    }
  };

  bool emit(const std::vector<PPtr>& proofs) {
    Finisher f{*this, {}, {}, ConstraintStore(), true};
    for (const Atom& a : query_.atoms)
      for (const std::string& v : variables(a)) f.taken.insert(v);
    for (const std::string& v : query_.store.variables()) f.taken.insert(v);
    std::vector<Atom> store_atoms;
    for (const Atom& a : store_.atoms()) store_atoms.push_back(f.finish(a));
    f.store = store_atoms == store_.atoms() ? store_ : ConstraintStore(store_atoms);

    Answer ans;
    ans.store = f.store;
    for (std::size_t i = 0; i < proofs.size(); ++i) {
      std::optional<ProofTree> t;
      QualValue d = dom_.bottom();
      if (query_.want_proofs) {
        t = f.build(*proofs[i]);
        d = t->node.degree;
      } else {
        d = f.degree(*proofs[i]);
      }
      if (!f.ok) return true;
      if (i < query_.thresholds.size() && !dom_.threshold_ok(d, query_.thresholds[i])) return true;
      if (query_.target) {
        if (!dom_.leq(*query_.target, d)) return true;
        d = *query_.target;
        if (t) t->node.degree = d;
      }
      ans.degrees.push_back(d);
      if (t) ans.proofs.push_back(std::move(*t));
    }
    std::map<std::string, Term> sigma;
    for (const std::string& v : query_.bindable) {
      Term val = f.finish(Term::variable(v));
      if (!(val.is_var() && val.name() == v)) sigma.emplace(v, val);
    }
    ans.sigma = Substitution(sigma);
    return out_(ans);
  }

  const Program& prog_;
  const QualDomain& dom_;
  const Query& query_;
  std::size_t limit_;
  const std::function<bool(const Answer&)>& out_;

  std::map<std::string, Term> bound_;
  std::vector<std::string> trail_;
  std::set<std::string> frozen_;
  std::vector<std::string> frozen_trail_;
  std::vector<std::pair<std::string, std::string>> links_;
  std::map<std::string, std::size_t> link_level_;  // fresh names are never reused
  std::vector<std::pair<std::string, std::string>> same_splits_;
  bool distinct_partners_ = false;  // some constructor is close to a different one
  ConstraintStore store_;
  std::size_t counter_ = 0;
  std::size_t steps_ = 0;
  Report report_;
};

}  // namespace

Report run(const Program& prog, const Query& query, std::size_t depth_limit,
           const std::function<bool(const Answer&)>& on_answer) {
  Engine engine(prog, query, depth_limit, on_answer);
  return engine.run();
}

}  // namespace sqclp::search

namespace sqclp {

DeriveResult derive(const Program& prog, const QcAtom& phi, std::size_t depth_limit) {
  DeriveResult res;
  if (phi.atom.kind() != Atom::Kind::Defined) {
    // Equations and primitive atoms are leaves.
    ProofTree leaf{phi, phi.atom.kind() == Atom::Kind::Equation ? RuleTag::SQEA : RuleTag::SQPA, {}, {}, {}};
    Tristate ok = check_proof(prog, leaf);
    if (ok == Tristate::True) res.proof = leaf;
    if (ok == Tristate::Unknown) res.unknown = true;
    return res;
  }
  search::Query q;
  q.atoms = {phi.atom};
  q.target = phi.degree;
  q.store = phi.store;
  search::Report rep = search::run(prog, q, depth_limit, [&](const search::Answer& a) {
    res.proof = a.proofs.front();
    return false;
  });
  res.cutoff = rep.cutoff;
  res.unknown = rep.unknown;
  return res;
}

}  // namespace sqclp
