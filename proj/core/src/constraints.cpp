#include "sqclp/constraints.hpp"

#include "linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqclp {

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::True: return "true";
    case Tristate::False: return "false";
    case Tristate::Unknown: return "unknown";
  }
  return "unknown";
}

Tristate tri_and(Tristate a, Tristate b) {
  if (a == Tristate::False || b == Tristate::False) return Tristate::False;
  if (a == Tristate::Unknown || b == Tristate::Unknown) return Tristate::Unknown;
  return Tristate::True;
}

bool eval_primitive(const Atom& atom) {
  if (atom.kind() != Atom::Kind::Primitive) throw std::invalid_argument("not a primitive atom");
  for (const Term& t : atom.args()) {
    if (!t.ground()) throw std::invalid_argument("primitive atom is not ground: " + to_string(atom));
    if (!t.is_basic()) return false;
  }
  const auto& a = atom.args();
  switch (atom.primitive_op()) {
    case Primitive::Add: return a[0].value() + a[1].value() == a[2].value();
    case Primitive::Mul: return a[0].value() * a[1].value() == a[2].value();
    case Primitive::Sub: return a[0].value() - a[1].value() == a[2].value();
    case Primitive::Lt: return a[0].value() < a[1].value();
    case Primitive::Le: return a[0].value() <= a[1].value();
    case Primitive::Gt: return a[0].value() > a[1].value();
    case Primitive::Ge: return a[0].value() >= a[1].value();
  }
  return false;
}

bool eval_ground(const Atom& atom) {
  switch (atom.kind()) {
    case Atom::Kind::Equation:
      if (!atom.lhs().ground() || !atom.rhs().ground())
        throw std::invalid_argument("equation is not ground: " + to_string(atom));
      return atom.lhs() == atom.rhs();
    case Atom::Kind::Primitive: return eval_primitive(atom);
    case Atom::Kind::Defined: break;
  }
  throw std::invalid_argument("defined atoms have no constraint truth value");
}

using linear::Affine;
using linear::Feasibility;
using linear::Inequality;

struct ConstraintStore::Normalized {
  Tristate status = Tristate::True;
  std::map<std::string, Term> bindings;  // idempotent most general unifier of the equations
  std::set<std::string> numeric;         // unbound variables constrained to be numbers
  linear::EqualitySolution equalities;
  std::vector<Inequality> inequalities;  // already resolved through `equalities`
  std::vector<Atom> residual;            // products of two non-constant factors
  std::map<std::string, Term> representative;  // unbound variable -> class representative
  std::set<std::string> variables;

  Term resolve(const Term& t) const {
    if (t.ground()) return t;
    if (t.is_var()) {
      auto it = bindings.find(t.name());
      return it == bindings.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(resolve(a));
    return Term::apply(t.name(), std::move(args));
  }

  Term normal_form(const Term& t) const {
    Term r = resolve(t);
    return replace_free(r);
  }

  Term replace_free(const Term& t) const {
    if (t.ground()) return t;
    if (t.is_var()) {
      auto it = representative.find(t.name());
      return it == representative.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(replace_free(a));
    return Term::apply(t.name(), std::move(args));
  }

  // Affine form of a resolved numeric leaf (number or unbound numeric variable).
  Affine affine(const Term& leaf) const {
    if (leaf.is_basic()) return Affine::of_const(leaf.value());
    return equalities.resolve_var(leaf.name());
  }

  bool numeric_leaf(const Term& resolved) const {
    return resolved.is_basic() || (resolved.is_var() && numeric.count(resolved.name()));
  }
};

namespace {

using Bindings = std::map<std::string, Term>;

Term walk(const Bindings& b, Term t) {
  while (t.is_var()) {
    auto it = b.find(t.name());
    if (it == b.end()) break;
    t = it->second;
  }
  return t;
}

Term resolve_fully(const Bindings& b, const Term& t) {
  Term w = walk(b, t);
  if (w.ground() || w.is_var()) return w;
  std::vector<Term> args;
  args.reserve(w.arity());
  for (const Term& a : w.args()) args.push_back(resolve_fully(b, a));
  return Term::apply(w.name(), std::move(args));
}

bool unify(Bindings& b, const Term& s, const Term& t) {
  Term x = walk(b, s), y = walk(b, t);
  if (x == y) return true;
  if (x.is_var() && y.is_var()) {
    // Bind the later-ranked variable so that representatives tend to be the least names.
    if (var_less(x.name(), y.name())) b.emplace(y.name(), x);
    else b.emplace(x.name(), y);
    return true;
  }
  if (x.is_var()) {
    if (occurs(x.name(), resolve_fully(b, y))) return false;
    b.emplace(x.name(), y);
    return true;
  }
  if (y.is_var()) return unify(b, y, x);
  if (x.is_basic() || y.is_basic()) return false;  // distinct numbers, or number vs constructor
  if (x.name() != y.name() || x.arity() != y.arity()) return false;
  for (std::size_t i = 0; i < x.arity(); ++i)
    if (!unify(b, x.args()[i], y.args()[i])) return false;
  return true;
}

Affine difference(const Affine& a, const Affine& b) {
  Affine d = a;
  d.add(b, Rational(-1));
  return d;
}

// Linear rows/inequalities contributed by a primitive whose arguments are numeric leaves.
// Returns false when the primitive is a product of two non-constant factors.
bool linearize(const ConstraintStore::Normalized& n, Primitive op, const std::vector<Term>& args,
               std::vector<Affine>& rows, std::vector<Inequality>& ineqs) {
  auto aff = [&](std::size_t i) { return n.affine(args[i]); };
  switch (op) {
    case Primitive::Add: {
      Affine r = aff(0);
      r.add(aff(1));
      r.add(aff(2), Rational(-1));
      rows.push_back(r);
      return true;
    }
    case Primitive::Sub: {
      Affine r = aff(0);
      r.add(aff(1), Rational(-1));
      r.add(aff(2), Rational(-1));
      rows.push_back(r);
      return true;
    }
    case Primitive::Mul: {
      Affine a = aff(0), b = aff(1);
      Affine r;
      if (a.is_constant()) {
        r = b;
        r.scale(a.constant);
      } else if (b.is_constant()) {
        r = a;
        r.scale(b.constant);
      } else {
        return false;
      }
      r.add(aff(2), Rational(-1));
      rows.push_back(r);
      return true;
    }
    case Primitive::Lt: ineqs.push_back({difference(aff(0), aff(1)), true}); return true;
    case Primitive::Le: ineqs.push_back({difference(aff(0), aff(1)), false}); return true;
    case Primitive::Gt: ineqs.push_back({difference(aff(1), aff(0)), true}); return true;
    case Primitive::Ge: ineqs.push_back({difference(aff(1), aff(0)), false}); return true;
  }
  return false;
}

Feasibility feasible_with(const std::vector<Inequality>& base, const std::vector<Inequality>& extra,
                          std::map<std::string, Rational>* witness = nullptr) {
  std::vector<Inequality> all = base;
  all.insert(all.end(), extra.begin(), extra.end());
  auto r = linear::fourier_motzkin(all);
  if (witness) *witness = std::move(r.witness);
  return r.status;
}

std::shared_ptr<const ConstraintStore::Normalized> normalize(const std::vector<Atom>& atoms) {
  auto n = std::make_shared<ConstraintStore::Normalized>();
  for (const Atom& a : atoms) collect_variables(a, n->variables);

  Bindings b;
  for (const Atom& a : atoms) {
    if (a.kind() == Atom::Kind::Defined) throw std::invalid_argument("defined atom in constraint store");
    if (a.kind() != Atom::Kind::Equation) continue;
    if (!unify(b, a.lhs(), a.rhs())) {
      n->status = Tristate::False;
      return n;
    }
  }
  for (const auto& [v, t] : b) n->bindings.emplace(v, resolve_fully(b, t));

  struct Prim {
    Primitive op;
    std::vector<Term> args;
  };
  std::vector<Prim> prims;
  for (const Atom& a : atoms) {
    if (a.kind() != Atom::Kind::Primitive) continue;
    Prim p{a.primitive_op(), {}};
    for (const Term& t : a.args()) {
      Term r = n->resolve(t);
      if (r.is_apply()) {  // data constructors make every primitive false
        n->status = Tristate::False;
        return n;
      }
      if (r.is_var()) n->numeric.insert(r.name());
      p.args.push_back(std::move(r));
    }
    prims.push_back(std::move(p));
  }

  std::vector<Affine> rows;
  std::vector<Inequality> raw_ineqs;
  std::vector<Prim> products;
  for (const Prim& p : prims) {
    if (!linearize(*n, p.op, p.args, rows, raw_ineqs)) products.push_back(p);
  }

  bool gave_up = false;
  for (;;) {
    n->equalities = linear::solve_equalities(rows);
    if (!n->equalities.consistent) {
      n->status = Tristate::False;
      return n;
    }
    // Products whose factors became constant are linear now.
    bool changed = false;
    std::vector<Prim> still;
    for (const Prim& p : products) {
      std::size_t before = rows.size();
      std::vector<Inequality> unused;
      if (linearize(*n, p.op, p.args, rows, unused)) {
        changed = changed || rows.size() != before;
      } else {
        still.push_back(p);
      }
    }
    products = std::move(still);
    if (changed) continue;

    n->inequalities.clear();
    for (const Inequality& q : raw_ineqs) n->inequalities.push_back({n->equalities.resolve(q.expr), q.strict});

    std::map<std::string, Rational> witness;
    Feasibility f = feasible_with(n->inequalities, {}, &witness);
    if (f == Feasibility::Infeasible) {
      n->status = Tristate::False;
      return n;
    }
    if (f == Feasibility::GaveUp) {
      gave_up = true;
      break;
    }
    if (n->inequalities.empty()) break;

    // Equalities implied by the inequalities: fixed values, then equal pairs.
    std::vector<std::string> nums(n->numeric.begin(), n->numeric.end());
    std::vector<Affine> implied;
    for (const std::string& v : nums) {
      Affine a = n->equalities.resolve_var(v);
      if (a.is_constant()) continue;
      Rational val = a.evaluate(witness);
      Affine below = a, above = a;
      below.constant -= val;  // a - val < 0
      above.scale(Rational(-1));
      above.constant += val;  // val - a < 0
      if (feasible_with(n->inequalities, {{below, true}}) == Feasibility::Infeasible &&
          feasible_with(n->inequalities, {{above, true}}) == Feasibility::Infeasible) {
        implied.push_back(below);
        break;
      }
    }
    if (implied.empty()) {
      for (std::size_t i = 0; i < nums.size() && implied.empty(); ++i) {
        for (std::size_t j = i + 1; j < nums.size(); ++j) {
          Affine d = difference(n->equalities.resolve_var(nums[i]), n->equalities.resolve_var(nums[j]));
          if (d.is_constant()) continue;
          Affine neg = d;
          neg.scale(Rational(-1));
          if (feasible_with(n->inequalities, {{d, true}}) == Feasibility::Infeasible &&
              feasible_with(n->inequalities, {{neg, true}}) == Feasibility::Infeasible) {
            implied.push_back(d);
            break;
          }
        }
      }
    }
    if (implied.empty()) break;
    rows.insert(rows.end(), implied.begin(), implied.end());
  }

  // Products with constant arguments everywhere are checked directly.
  for (const Prim& p : products) n->residual.push_back(Atom::primitive(p.op, p.args));
  n->status = (n->residual.empty() && !gave_up) ? Tristate::True : Tristate::Unknown;

  // Class representatives.
  std::map<std::string, std::vector<std::string>> members;  // class key -> variables
  std::map<std::string, Term> constant_of;
  auto key_of_free = [&](const std::string& v) -> std::string {
    if (n->numeric.count(v)) {
      Affine a = n->equalities.resolve_var(v);
      if (a.is_constant()) constant_of.emplace("#" + a.key(), Term::number(a.constant));
      return "#" + a.key();
    }
    return "@" + v;
  };
  for (const std::string& v : n->variables) {
    Term r = n->resolve(Term::variable(v));
    if (r.is_var()) members[key_of_free(r.name())].push_back(v);
  }
  for (const std::string& v : n->numeric) members[key_of_free(v)].push_back(v);
  std::map<std::string, Term> rep_of_key;
  for (auto& [key, vars] : members) {
    auto c = constant_of.find(key);
    if (c != constant_of.end()) {
      rep_of_key.emplace(key, c->second);
      continue;
    }
    std::string best = *std::min_element(vars.begin(), vars.end(), var_less);
    rep_of_key.emplace(key, Term::variable(best));
  }
  for (const std::string& v : n->variables) {
    Term r = n->resolve(Term::variable(v));
    if (!r.is_var()) continue;
    n->representative.insert_or_assign(r.name(), rep_of_key.at(key_of_free(r.name())));
  }
  return n;
}

// Leaves of a resolved term, paired positionally, where the two terms first disagree.
struct Disagreement {
  bool structural = false;  // disagreement that any solution witnesses
  std::optional<std::pair<Term, Term>> numeric;
};

void find_disagreement(const ConstraintStore::Normalized& n, const Term& a, const Term& b, Disagreement& d) {
  if (a == b || d.structural) return;
  if (a.is_apply() && b.is_apply() && a.name() == b.name() && a.arity() == b.arity()) {
    for (std::size_t i = 0; i < a.arity(); ++i) find_disagreement(n, a.args()[i], b.args()[i], d);
    return;
  }
  bool both_numeric = n.numeric_leaf(a) && n.numeric_leaf(b) && !(a.is_basic() && b.is_basic());
  if (both_numeric) {
    if (!d.numeric) d.numeric = std::make_pair(a, b);
    return;
  }
  d.structural = true;
}

std::optional<Valuation> build_valuation(const ConstraintStore::Normalized& n,
                                         const std::map<std::string, Rational>& fm_values,
                                         const std::set<std::string>& extra) {
  std::map<std::string, Rational> free_values = fm_values;
  std::map<std::string, Term> value;
  std::size_t fresh = 0;
  std::set<std::string> vars = n.variables;
  vars.insert(extra.begin(), extra.end());

  auto free_value = [&](const std::string& v) -> Term {
    if (auto it = value.find(v); it != value.end()) return it->second;
    Term out = Term::number(0);
    if (n.numeric.count(v)) {
      out = Term::number(n.equalities.resolve_var(v).evaluate(free_values));
    } else {
      out = Term::apply("$" + std::to_string(fresh++));
    }
    value.emplace(v, out);
    return out;
  };
  // Fill unbound variables first so bound ones can be instantiated.
  std::set<std::string> unbound;
  for (const std::string& v : vars) {
    Term r = n.resolve(Term::variable(v));
    collect_variables(r, unbound);
  }
  for (const std::string& v : n.numeric) unbound.insert(v);
  for (const std::string& v : unbound) free_value(v);
  Substitution free_sub(std::map<std::string, Term>(value.begin(), value.end()));
  Valuation eta;
  for (const std::string& v : vars) eta.bind(v, free_sub.apply(n.resolve(Term::variable(v))));
  return eta;
}

}  // namespace

ConstraintStore::ConstraintStore() : ConstraintStore(std::vector<Atom>{}) {}

ConstraintStore::ConstraintStore(std::vector<Atom> atoms) : atoms_(std::move(atoms)), norm_(normalize(atoms_)) {}

ConstraintStore ConstraintStore::with(const std::vector<Atom>& more) const {
  std::vector<Atom> all = atoms_;
  for (const Atom& a : more)
    if (std::find(all.begin(), all.end(), a) == all.end()) all.push_back(a);
  return ConstraintStore(std::move(all));
}

ConstraintStore ConstraintStore::substituted(const Substitution& sigma) const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(sigma.apply(a));
  return ConstraintStore(std::move(out));
}

std::set<std::string> ConstraintStore::variables() const { return norm_->variables; }

bool ConstraintStore::is_numeric(const std::string& var) const {
  Term r = norm_->resolve(Term::variable(var));
  return norm_->numeric_leaf(r);
}

Tristate ConstraintStore::satisfiable() const { return norm_->status; }

Term ConstraintStore::normal_form(const Term& t) const { return norm_->normal_form(t); }

Term ConstraintStore::canonical_form(const Term& t) const {
  if (t.ground()) return t;
  if (t.is_var()) {
    Term nf = normal_form(t);
    std::string best = t.name();
    for (const std::string& v : norm_->variables)
      if (var_less(v, best) && normal_form(Term::variable(v)) == nf) best = v;
    return Term::variable(best);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(canonical_form(a));
  return Term::apply(t.name(), std::move(args));
}

std::optional<Valuation> ConstraintStore::witness(const std::set<std::string>& extra) const {
  if (norm_->status != Tristate::True) return std::nullopt;
  std::map<std::string, Rational> values;
  if (feasible_with(norm_->inequalities, {}, &values) != Feasibility::Feasible) return std::nullopt;
  return build_valuation(*norm_, values, extra);
}

std::optional<Valuation> ConstraintStore::countermodel(const Atom& atom) const {
  const Normalized& n = *norm_;
  if (n.status != Tristate::True) return std::nullopt;
  std::set<std::string> extra = sqclp::variables(atom);

  std::vector<std::vector<Inequality>> attempts;
  if (atom.kind() == Atom::Kind::Equation) {
    Disagreement d;
    find_disagreement(n, n.normal_form(atom.lhs()), n.normal_form(atom.rhs()), d);
    if (d.structural) {
      attempts.push_back({});
    } else if (d.numeric) {
      Affine diff = difference(n.affine(d.numeric->first), n.affine(d.numeric->second));
      Affine neg = diff;
      neg.scale(Rational(-1));
      attempts.push_back({{diff, true}});
      attempts.push_back({{neg, true}});
    } else {
      return std::nullopt;
    }
  } else if (atom.kind() == Atom::Kind::Primitive) {
    std::vector<Term> args;
    bool linear_ok = true;
    for (const Term& t : atom.args()) {
      Term r = n.normal_form(t);
      if (!n.numeric_leaf(r)) linear_ok = false;
      args.push_back(r);
    }
    std::vector<Affine> rows;
    std::vector<Inequality> ineqs;
    if (linear_ok && linearize(n, atom.primitive_op(), args, rows, ineqs)) {
      for (Affine& r : rows) {
        Affine neg = r;
        neg.scale(Rational(-1));
        attempts.push_back({{r, true}});
        attempts.push_back({{neg, true}});
      }
      for (Inequality& q : ineqs) {
        Affine neg = q.expr;
        neg.scale(Rational(-1));
        attempts.push_back({{neg, !q.strict}});  // not (e < 0) is -e <= 0
      }
    } else {
      attempts.push_back({});
    }
  } else {
    return std::nullopt;
  }

  for (const auto& extra_ineqs : attempts) {
    std::map<std::string, Rational> values;
    if (feasible_with(n.inequalities, extra_ineqs, &values) != Feasibility::Feasible) continue;
    auto eta = build_valuation(n, values, extra);
    if (!eta) continue;
    if (!satisfies(*eta, atoms_)) continue;
    if (!eval_ground(eta->apply(atom))) return eta;
  }
  return std::nullopt;
}

Tristate ConstraintStore::entails(const Atom& atom) const {
  const Normalized& n = *norm_;
  if (n.status == Tristate::False) return Tristate::True;
  if (atom.kind() == Atom::Kind::Defined) throw std::invalid_argument("defined atoms are not constraints");

  if (atom.kind() == Atom::Kind::Equation) {
    if (n.normal_form(atom.lhs()) == n.normal_form(atom.rhs())) return Tristate::True;
    if (n.status != Tristate::True) return Tristate::Unknown;
    return countermodel(atom) ? Tristate::False : Tristate::Unknown;
  }

  std::vector<Term> args;
  bool linear_ok = true;
  for (const Term& t : atom.args()) {
    Term r = n.normal_form(t);
    if (!n.numeric_leaf(r)) linear_ok = false;
    args.push_back(r);
  }
  if (linear_ok && std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_basic(); }))
    return from_bool(eval_primitive(Atom::primitive(atom.primitive_op(), args)));

  std::vector<Affine> rows;
  std::vector<Inequality> ineqs;
  if (linear_ok && linearize(n, atom.primitive_op(), args, rows, ineqs)) {
    bool all_refuted = true;
    bool gave_up = false;
    auto refute = [&](const Inequality& negation) {
      Feasibility f = feasible_with(n.inequalities, {negation});
      if (f == Feasibility::GaveUp) gave_up = true;
      if (f != Feasibility::Infeasible) all_refuted = false;
    };
    for (const Affine& r : rows) {
      Affine neg = r;
      neg.scale(Rational(-1));
      refute({r, true});
      refute({neg, true});
    }
    for (const Inequality& q : ineqs) {
      Affine neg = q.expr;
      neg.scale(Rational(-1));
      refute({neg, !q.strict});
    }
    if (all_refuted && !gave_up) return Tristate::True;
  }
  if (n.status != Tristate::True) return Tristate::Unknown;
  return countermodel(atom) ? Tristate::False : Tristate::Unknown;
}

Tristate ConstraintStore::entails_all(const std::vector<Atom>& atoms) const {
  Tristate out = Tristate::True;
  for (const Atom& a : atoms) {
    out = tri_and(out, entails(a));
    if (out == Tristate::False) return out;
  }
  return out;
}

Tristate ConstraintStore::entails(const Constraint& pi) const {
  if (norm_->status == Tristate::False) return Tristate::True;
  if (pi.existential.empty() && pi.integral.empty()) return entails_all(pi.atoms);

  // Witness construction for the existential variables: equations and functional arithmetic.
  std::set<std::string> open(pi.existential.begin(), pi.existential.end());
  Substitution sigma;
  auto has_open = [&](const Term& t) {
    for (const std::string& v : sqclp::variables(t))
      if (open.count(v)) return true;
    return false;
  };
  bool progress = true;
  while (progress && !open.empty()) {
    progress = false;
    for (const Atom& raw : pi.atoms) {
      Atom a = sigma.apply(raw);
      if (a.kind() == Atom::Kind::Equation) {
        for (int side = 0; side < 2 && !progress; ++side) {
          const Term& v = a.args()[side];
          const Term& other = a.args()[1 - side];
          if (v.is_var() && open.count(v.name()) && !has_open(other)) {
            sigma = compose(sigma, Substitution({{v.name(), other}}));
            open.erase(v.name());
            progress = true;
          }
        }
      } else if (a.kind() == Atom::Kind::Primitive) {
        Primitive op = a.primitive_op();
        if (op != Primitive::Add && op != Primitive::Sub && op != Primitive::Mul) continue;
        const Term& out = a.args()[2];
        if (!out.is_var() || !open.count(out.name())) continue;
        Term x = normal_form(a.args()[0]), y = normal_form(a.args()[1]);
        if (!x.is_basic() || !y.is_basic()) continue;
        Rational r = op == Primitive::Add   ? Rational(x.value() + y.value())
                     : op == Primitive::Sub ? Rational(x.value() - y.value())
                                            : Rational(x.value() * y.value());
        sigma = compose(sigma, Substitution({{out.name(), Term::number(r)}}));
        open.erase(out.name());
        progress = true;
      }
      if (progress) break;
    }
  }
  if (!open.empty()) return Tristate::Unknown;
  std::vector<Atom> closed;
  for (const Atom& a : pi.atoms) closed.push_back(sigma.apply(a));
  Tristate verdict = entails_all(closed);
  for (const std::string& v : pi.integral) {
    Term t = normal_form(sigma.apply(Term::variable(v)));
    if (!t.is_basic()) return verdict == Tristate::False ? verdict : Tristate::Unknown;
    if (!is_integer(t.value())) return Tristate::False;
  }
  return verdict == Tristate::False ? Tristate::Unknown : verdict;
}

bool satisfies(const Valuation& eta, const std::vector<Atom>& atoms) {
  for (const Atom& a : atoms) {
    Atom g = eta.apply(a);
    for (const Term& t : g.args())
      if (!t.ground()) throw std::invalid_argument("valuation does not ground " + to_string(a));
    if (!eval_ground(g)) return false;
  }
  return true;
}

bool satisfies(const Valuation& eta, const Constraint& pi) {
  std::set<std::string> existential(pi.existential.begin(), pi.existential.end());
  // Existential variables shadow any binding in eta.
  Substitution outer;
  for (const auto& [v, t] : eta.bindings())
    if (!existential.count(v)) outer.bind(v, t);
  std::vector<Atom> applied;
  for (const Atom& a : pi.atoms) {
    Atom g = outer.apply(a);
    for (const std::string& v : variables(g))
      if (!existential.count(v)) throw std::invalid_argument("valuation does not ground " + v);
    applied.push_back(std::move(g));
  }
  for (const std::string& v : pi.integral) {
    if (existential.count(v)) continue;
    const Term* t = outer.lookup(v);
    if (!t) throw std::invalid_argument("valuation does not ground " + v);
    if (!t->is_basic() || !is_integer(t->value())) return false;
  }
  if (existential.empty()) {
    for (const Atom& g : applied)
      if (!eval_ground(g)) return false;
    return true;
  }
  ConstraintStore local(applied);
  switch (local.satisfiable()) {
    case Tristate::False: return false;
    case Tristate::Unknown: throw std::domain_error("existential constraint outside the decidable fragment");
    case Tristate::True: break;
  }
  for (const std::string& v : pi.integral) {
    if (!existential.count(v)) continue;
    Term t = local.normal_form(Term::variable(v));
    if (!t.is_basic()) throw std::domain_error("integrality of an undetermined existential variable");
    if (!is_integer(t.value())) return false;
  }
  return true;
}

std::string to_string(const ConstraintStore& store) {
  std::string out = "{";
  for (std::size_t i = 0; i < store.atoms().size(); ++i) {
    if (i) out += ", ";
    out += to_string(store.atoms()[i]);
  }
  return out + "}";
}

Tristate pi_equiv(const ConstraintStore& store, const Term& t, const Term& s) {
  return store.entails(Atom::equation(t, s));
}

Term canonical_form(const ConstraintStore& store, const Term& t) { return store.canonical_form(t); }
Tristate entails(const ConstraintStore& store, const Atom& atom) { return store.entails(atom); }
Tristate entails(const ConstraintStore& store, const Constraint& pi) { return store.entails(pi); }
Tristate satisfiable(const ConstraintStore& store) { return store.satisfiable(); }

bool subst_entailment_check(const ConstraintStore& store, const Constraint& pi, const Substitution& sigma) {
  if (store.entails(pi) != Tristate::True) return true;  // precondition not met: nothing to check
  Constraint moved = pi;
  moved.atoms.clear();
  for (const Atom& a : pi.atoms) moved.atoms.push_back(sigma.apply(a));
  Tristate after = store.substituted(sigma).entails(moved);
  return after != Tristate::False;
}

}  // namespace sqclp
