#pragma once

#include "sqclp/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sqclp {

// Immutable constructor term: variable, basic (rational) value, or constructor application.
// Nodes are shared, so copies are cheap.
class Term {
 public:
  enum class Kind : unsigned char { Var, Basic, Apply };

  static Term variable(std::string name);
  static Term number(Rational value);
  static Term apply(std::string functor, std::vector<Term> args = {});

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_basic() const { return kind() == Kind::Basic; }
  bool is_apply() const { return kind() == Kind::Apply; }

  // Variable name or constructor name; empty for basic values.
  const std::string& name() const;
  const Rational& value() const;
  const std::vector<Term>& args() const;
  std::size_t arity() const { return args().size(); }

  std::size_t hash() const;
  std::size_t size() const;
  bool ground() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

std::string to_string(const Term& t);

enum class Primitive : unsigned char { Add, Mul, Sub, Lt, Le, Gt, Ge };

std::optional<Primitive> primitive_from_name(const std::string& name);
const std::string& primitive_name(Primitive p);  // canonical ASCII spelling
std::size_t primitive_arity(Primitive p);

class Atom {
 public:
  enum class Kind : unsigned char { Defined, Primitive, Equation };

  static Atom defined(std::string predicate, std::vector<Term> args = {});
  static Atom primitive(Primitive op, std::vector<Term> args);
  static Atom equation(Term lhs, Term rhs);

  Kind kind() const { return kind_; }
  // Predicate name; "==" for equations, canonical primitive spelling for primitives.
  const std::string& predicate() const { return predicate_; }
  Primitive primitive_op() const;
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }
  const Term& lhs() const { return args_.at(0); }
  const Term& rhs() const { return args_.at(1); }

  Atom with_args(std::vector<Term> args) const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

 private:
  Atom(Kind kind, std::string predicate, std::vector<Term> args);
  Kind kind_;
  std::string predicate_;
  std::vector<Term> args_;
};

std::string to_string(const Atom& a);

// Finite set of bindings applied simultaneously. X -> X bindings are never stored.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<std::string, Term> bindings);

  void bind(const std::string& var, Term value);
  const Term* lookup(const std::string& var) const;
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  std::set<std::string> domain() const;
  std::set<std::string> range_variables() const;

  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

// t(compose(s1, s2)) == (t s1) s2
Substitution compose(const Substitution& first, const Substitution& second);
std::string to_string(const Substitution& s);

using Position = std::vector<std::size_t>;  // 1-based child indices; empty is the root

struct Symbol {
  Term::Kind kind;
  std::string text;  // variable/constructor name or formatted number
  std::size_t arity;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

std::vector<Position> positions(const Term& t);
bool valid_position(const Term& t, const Position& p);
Symbol symbol_at(const Term& t, const Position& p);
const Term& subterm(const Term& t, const Position& p);
Term replace(const Term& t, const Position& p, const Term& replacement);
std::size_t size(const Term& t);

// Term extension: variables of `base` are filled by the corresponding subterms of `filler`.
Term extend(const Term& base, const Term& filler);

void collect_variables(const Term& t, std::set<std::string>& out);
void collect_variables(const Atom& a, std::set<std::string>& out);
std::set<std::string> variables(const Term& t);
std::set<std::string> variables(const Atom& a);
bool occurs(const std::string& var, const Term& t);

// Deterministic total order on variable names (lexicographic on the name).
class VarRank {
 public:
  explicit VarRank(std::string name) : name_(std::move(name)) {}
  const std::string& name() const { return name_; }
  friend std::strong_ordering operator<=>(const VarRank&, const VarRank&) = default;
  friend bool operator==(const VarRank&, const VarRank&) = default;

 private:
  std::string name_;
};

VarRank var_ord(const std::string& name);
bool var_less(const std::string& a, const std::string& b);

// Existentially closed conjunction of atomic constraints. `integral` lists variables whose
// value must be a natural number (used by the discrete cost domains).
struct Constraint {
  std::vector<std::string> existential;
  std::vector<Atom> atoms;
  std::vector<std::string> integral;
};

std::string to_string(const Constraint& c);

// Built-in constructors with fixed arities.
bool is_builtin_constructor(const std::string& name, std::size_t* arity = nullptr);
Term make_pair(Term left, Term right);
Term make_list(const std::vector<Term>& items, std::optional<Term> tail = std::nullopt);

}  // namespace sqclp
