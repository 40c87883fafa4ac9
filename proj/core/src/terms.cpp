#include "sqclp/terms.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sqclp {

struct Term::Node {
  Kind kind;
  std::string name;
  Rational value;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  bool ground = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->hash = mix(1, std::hash<std::string>{}(name));
  node->ground = false;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::number(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Basic;
  node->hash = mix(2, std::hash<std::string>{}(format_rational(value)));
  node->value = std::move(value);
  return Term(std::move(node));
}

Term Term::apply(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Apply;
  std::size_t h = mix(3, std::hash<std::string>{}(functor));
  for (const Term& a : args) {
    h = mix(h, a.hash());
    node->size += a.size();
    node->ground = node->ground && a.ground();
  }
  node->hash = h;
  node->name = std::move(functor);
  node->args = std::move(args);
  return Term(std::move(node));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Rational& Term::value() const { return node_->value; }
const std::vector<Term>& Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
bool Term::ground() const { return node_->ground; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::Basic: return a.value() == b.value();
    case Term::Kind::Apply: return a.name() == b.name() && a.args() == b.args();
  }
  return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Term::Kind::Var: return a.name() <=> b.name();
    case Term::Kind::Basic:
      if (a.value() < b.value()) return std::strong_ordering::less;
      if (b.value() < a.value()) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    case Term::Kind::Apply: {
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      if (auto c = a.arity() <=> b.arity(); c != 0) return c;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

namespace {

void print_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out += t.name(); return;
    case Term::Kind::Basic: out += format_rational(t.value()); return;
    case Term::Kind::Apply: break;
  }
  if (t.name() == "pair" && t.arity() == 2) {
    out += '(';
    print_term(t.args()[0], out);
    out += ',';
    print_term(t.args()[1], out);
    out += ')';
    return;
  }
  if ((t.name() == "cons" && t.arity() == 2) || (t.name() == "nil" && t.arity() == 0)) {
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (cur->is_apply() && cur->name() == "cons" && cur->arity() == 2) {
      if (!first) out += ',';
      first = false;
      print_term(cur->args()[0], out);
      cur = &cur->args()[1];
    }
    if (!(cur->is_apply() && cur->name() == "nil" && cur->arity() == 0)) {
      out += '|';
      print_term(*cur, out);
    }
    out += ']';
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print_term(t.args()[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

namespace {

struct PrimitiveSpelling {
  Primitive op;
  std::string canonical;
};

const std::vector<PrimitiveSpelling>& primitive_table() {
  static const std::vector<PrimitiveSpelling> table = {
      {Primitive::Add, "op_+"}, {Primitive::Mul, "op_*"}, {Primitive::Sub, "op_-"},
      {Primitive::Lt, "cp_<"},  {Primitive::Le, "cp_<="}, {Primitive::Gt, "cp_>"},
      {Primitive::Ge, "cp_>="},
  };
  return table;
}

}  // namespace

std::optional<Primitive> primitive_from_name(const std::string& name) {
  static const std::map<std::string, Primitive> aliases = {
      {"op_+", Primitive::Add},       {"op_*", Primitive::Mul},     {"op_×", Primitive::Mul},
      {"op_-", Primitive::Sub},       {"op_−", Primitive::Sub}, {"cp_<", Primitive::Lt},
      {"cp_<=", Primitive::Le},       {"cp_≤", Primitive::Le}, {"cp_>", Primitive::Gt},
      {"cp_>=", Primitive::Ge},       {"cp_≥", Primitive::Ge},
  };
  auto it = aliases.find(name);
  if (it == aliases.end()) return std::nullopt;
  return it->second;
}

const std::string& primitive_name(Primitive p) {
  for (const auto& row : primitive_table())
    if (row.op == p) return row.canonical;
  throw std::logic_error("unknown primitive");
}

std::size_t primitive_arity(Primitive p) {
  switch (p) {
    case Primitive::Add:
    case Primitive::Mul:
    case Primitive::Sub: return 3;
    default: return 2;
  }
}

Atom::Atom(Kind kind, std::string predicate, std::vector<Term> args)
    : kind_(kind), predicate_(std::move(predicate)), args_(std::move(args)) {}

Atom Atom::defined(std::string predicate, std::vector<Term> args) {
  return Atom(Kind::Defined, std::move(predicate), std::move(args));
}

Atom Atom::primitive(Primitive op, std::vector<Term> args) {
  if (args.size() != primitive_arity(op))
    throw std::invalid_argument("wrong arity for " + primitive_name(op));
  return Atom(Kind::Primitive, primitive_name(op), std::move(args));
}

Atom Atom::equation(Term lhs, Term rhs) {
  return Atom(Kind::Equation, "==", {std::move(lhs), std::move(rhs)});
}

Primitive Atom::primitive_op() const {
  if (kind_ != Kind::Primitive) throw std::logic_error("not a primitive atom");
  return *primitive_from_name(predicate_);
}

Atom Atom::with_args(std::vector<Term> args) const {
  if (args.size() != args_.size()) throw std::invalid_argument("arity change in with_args");
  return Atom(kind_, predicate_, std::move(args));
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string to_string(const Atom& a) {
  if (a.kind() == Atom::Kind::Equation) return to_string(a.lhs()) + " == " + to_string(a.rhs());
  std::string out = a.predicate();
  if (a.arity() == 0) return out;
  out += '(';
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (i) out += ',';
    out += to_string(a.args()[i]);
  }
  out += ')';
  return out;
}

Substitution::Substitution(std::map<std::string, Term> bindings) {
  for (auto& [var, value] : bindings) bind(var, std::move(value));
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.is_var() && value.name() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(value));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::set<std::string> Substitution::domain() const {
  std::set<std::string> out;
  for (const auto& [var, value] : bindings_) out.insert(var);
  return out;
}

std::set<std::string> Substitution::range_variables() const {
  std::set<std::string> out;
  for (const auto& [var, value] : bindings_) collect_variables(value, out);
  return out;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty() || t.ground()) return t;
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Term* bound = lookup(t.name());
      return bound ? *bound : t;
    }
    case Term::Kind::Basic: return t;
    case Term::Kind::Apply: break;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::apply(t.name(), std::move(args)) : t;
}

Atom Substitution::apply(const Atom& a) const {
  std::vector<Term> args;
  args.reserve(a.arity());
  for (const Term& t : a.args()) args.push_back(apply(t));
  return a.with_args(std::move(args));
}

Substitution compose(const Substitution& first, const Substitution& second) {
  std::map<std::string, Term> out;
  for (const auto& [var, value] : first.bindings()) out.insert_or_assign(var, second.apply(value));
  for (const auto& [var, value] : second.bindings())
    if (!first.lookup(var)) out.insert_or_assign(var, value);
  return Substitution(std::move(out));
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += var + " -> " + to_string(value);
  }
  return out + "}";
}

namespace {

void walk_positions(const Term& t, Position& prefix, std::vector<Position>& out) {
  out.push_back(prefix);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    prefix.push_back(i + 1);
    walk_positions(t.args()[i], prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position prefix;
  walk_positions(t, prefix, out);
  return out;
}

bool valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t step : p) {
    if (step == 0 || step > cur->arity()) return false;
    cur = &cur->args()[step - 1];
  }
  return true;
}

const Term& subterm(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t step : p) {
    if (step == 0 || step > cur->arity()) throw std::out_of_range("invalid position");
    cur = &cur->args()[step - 1];
  }
  return *cur;
}

Symbol symbol_at(const Term& t, const Position& p) {
  const Term& s = subterm(t, p);
  switch (s.kind()) {
    case Term::Kind::Var: return {s.kind(), s.name(), 0};
    case Term::Kind::Basic: return {s.kind(), format_rational(s.value()), 0};
    case Term::Kind::Apply: return {s.kind(), s.name(), s.arity()};
  }
  throw std::logic_error("unreachable");
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& replacement) {
  if (depth == p.size()) return replacement;
  std::size_t step = p[depth];
  if (step == 0 || step > t.arity()) throw std::out_of_range("invalid position");
  std::vector<Term> args = t.args();
  args[step - 1] = replace_from(args[step - 1], p, depth + 1, replacement);
  return Term::apply(t.name(), std::move(args));
}

}  // namespace

Term replace(const Term& t, const Position& p, const Term& replacement) {
  return replace_from(t, p, 0, replacement);
}

std::size_t size(const Term& t) { return t.size(); }

Term extend(const Term& base, const Term& filler) {
  switch (base.kind()) {
    case Term::Kind::Var: return filler;
    case Term::Kind::Basic: return base;
    case Term::Kind::Apply: break;
  }
  if (!filler.is_apply() || filler.arity() != base.arity()) return base;
  std::vector<Term> args;
  args.reserve(base.arity());
  for (std::size_t i = 0; i < base.arity(); ++i) args.push_back(extend(base.args()[i], filler.args()[i]));
  return Term::apply(base.name(), std::move(args));
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

void collect_variables(const Atom& a, std::set<std::string>& out) {
  for (const Term& t : a.args()) collect_variables(t, out);
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_variables(t, out);
  return out;
}

std::set<std::string> variables(const Atom& a) {
  std::set<std::string> out;
  collect_variables(a, out);
  return out;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return occurs(var, a); });
}

VarRank var_ord(const std::string& name) { return VarRank(name); }
bool var_less(const std::string& a, const std::string& b) { return var_ord(a) < var_ord(b); }

std::string to_string(const Constraint& c) {
  std::string out;
  for (const auto& v : c.existential) out += "exists " + v + ". ";
  if (c.atoms.empty()) out += "true";
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    if (i) out += " /\\ ";
    out += to_string(c.atoms[i]);
  }
  for (const auto& v : c.integral) out += " /\\ integral(" + v + ")";
  return out;
}

bool is_builtin_constructor(const std::string& name, std::size_t* arity) {
  static const std::map<std::string, std::size_t> builtins = {
      {"true", 0}, {"false", 0}, {"pair", 2}, {"nil", 0}, {"cons", 2}};
  auto it = builtins.find(name);
  if (it == builtins.end()) return false;
  if (arity) *arity = it->second;
  return true;
}

Term make_pair(Term left, Term right) { return Term::apply("pair", {std::move(left), std::move(right)}); }

Term make_list(const std::vector<Term>& items, std::optional<Term> tail) {
  Term out = tail ? *tail : Term::apply("nil");
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = Term::apply("cons", {*it, out});
  return out;
}

}  // namespace sqclp
