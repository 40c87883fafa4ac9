#pragma once

#include "sqclp/constraints.hpp"
#include "sqclp/qualdom.hpp"
#include "sqclp/terms.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sqclp {

enum class SymbolCategory : unsigned char { Constructor, Defined, Primitive };

std::string to_string(SymbolCategory c);

struct SymbolInfo {
  SymbolCategory category;
  std::size_t arity;
  friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

// Declared constructors and predicates. Primitive predicates and built-in constructors are
// always present.
class Signature {
 public:
  Signature();

  // Throws std::invalid_argument when the name is already declared differently.
  void declare(const std::string& name, SymbolInfo info);
  const SymbolInfo* lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }
  const std::map<std::string, SymbolInfo>& symbols() const { return symbols_; }

 private:
  std::map<std::string, SymbolInfo> symbols_;
};

// Reflexive, symmetric relation on symbols valued in a qualification domain. Pairs not stored
// are related at bottom; every symbol is related to itself at top.
class ProximityRelation {
 public:
  explicit ProximityRelation(QualDomain dom);

  const QualDomain& domain() const { return dom_; }
  // Setting bottom removes the entry. Throws for x == y or values outside the carrier.
  void set(const std::string& x, const std::string& y, const QualValue& d);
  QualValue prox(const std::string& x, const std::string& y) const;
  // Symbols related to x above bottom, x itself first, then by decreasing degree (ties by name).
  std::vector<std::pair<std::string, QualValue>> neighbors(const std::string& x) const;

  struct Entry {
    std::string x, y;  // x < y
    QualValue degree;
  };
  std::vector<Entry> entries() const;
  bool is_identity() const { return table_.empty(); }

 private:
  QualDomain dom_;
  std::map<std::pair<std::string, std::string>, QualValue> table_;
};

struct TripleConfig {
  ProximityRelation prox;
  QualDomain qdom;
  ConstraintDomainKind cdom = ConstraintDomainKind::Real;
  Signature signature;
};

struct Violation {
  std::string kind;    // "primitive pair", "arity mismatch", "category mismatch", "unknown symbol", "not expressible"
  std::string detail;  // offending entry
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_admissible(const TripleConfig& cfg);

// Exhaustive transitivity check over the given symbols.
bool is_similarity(const ProximityRelation& rel, const std::set<std::string>& symbols);

QualValue term_prox(const ProximityRelation& rel, const Term& t, const Term& s);
QualValue atom_prox(const ProximityRelation& rel, const Atom& a, const Atom& b);
bool close_at(const ProximityRelation& rel, const QualValue& lambda, const Term& t, const Term& s);

// Best degree d with t and s S-close at d modulo the store. `exact` is false when the store
// lies outside the decided fragment; `degree` is then only a lower bound.
struct ProxDegree {
  QualValue degree;
  bool exact = true;
};

ProxDegree prox_degree_modulo(const ProximityRelation& rel, const ConstraintStore& store, const Term& t,
                              const Term& s);
Tristate close_at_modulo(const ProximityRelation& rel, const QualValue& lambda, const ConstraintStore& store,
                         const Term& t, const Term& s);

}  // namespace sqclp
