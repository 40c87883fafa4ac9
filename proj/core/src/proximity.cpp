#include "sqclp/proximity.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqclp {

std::string to_string(SymbolCategory c) {
  switch (c) {
    case SymbolCategory::Constructor: return "constructor";
    case SymbolCategory::Defined: return "predicate";
    case SymbolCategory::Primitive: return "primitive";
  }
  return "?";
}

Signature::Signature() {
  for (const char* name : {"true", "false", "nil", "pair", "cons"}) {
    std::size_t arity = 0;
    is_builtin_constructor(name, &arity);
    symbols_.emplace(name, SymbolInfo{SymbolCategory::Constructor, arity});
  }
  for (Primitive p : {Primitive::Add, Primitive::Mul, Primitive::Sub, Primitive::Lt, Primitive::Le, Primitive::Gt,
                      Primitive::Ge})
    symbols_.emplace(primitive_name(p), SymbolInfo{SymbolCategory::Primitive, primitive_arity(p)});
  symbols_.emplace("==", SymbolInfo{SymbolCategory::Primitive, 2});
}

void Signature::declare(const std::string& name, SymbolInfo info) {
  auto [it, inserted] = symbols_.emplace(name, info);
  if (!inserted && !(it->second == info))
    throw std::invalid_argument("symbol " + name + " already declared as " + to_string(it->second.category) + "/" +
                                std::to_string(it->second.arity));
}

const SymbolInfo* Signature::lookup(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

ProximityRelation::ProximityRelation(QualDomain dom) : dom_(std::move(dom)) {}

void ProximityRelation::set(const std::string& x, const std::string& y, const QualValue& d) {
  if (x == y) throw std::invalid_argument("proximity of a symbol with itself is fixed at top");
  if (!dom_.contains(d)) throw CarrierError("proximity degree " + to_string(d) + " is not in " + dom_.name());
  auto key = std::minmax(x, y);
  if (dom_.is_bottom(d)) table_.erase({key.first, key.second});
  else table_.insert_or_assign({key.first, key.second}, d);
}

QualValue ProximityRelation::prox(const std::string& x, const std::string& y) const {
  if (x == y) return dom_.top();
  auto key = std::minmax(x, y);
  auto it = table_.find({key.first, key.second});
  return it == table_.end() ? dom_.bottom() : it->second;
}

std::vector<std::pair<std::string, QualValue>> ProximityRelation::neighbors(const std::string& x) const {
  std::vector<std::pair<std::string, QualValue>> out;
  for (const auto& [key, d] : table_) {
    if (key.first == x) out.emplace_back(key.second, d);
    else if (key.second == x) out.emplace_back(key.first, d);
  }
  // Degrees are only partially ordered in products: repeatedly take the first maximal one.
  std::vector<std::pair<std::string, QualValue>> sorted{{x, dom_.top()}};
  while (!out.empty()) {
    auto pick = out.begin();
    for (auto it = out.begin(); it != out.end(); ++it) {
      bool dominated = false;
      for (const auto& other : out)
        if (dom_.leq(it->second, other.second) && !(it->second == other.second)) dominated = true;
      if (!dominated) {
        pick = it;
        break;
      }
    }
    sorted.push_back(*pick);
    out.erase(pick);
  }
  return sorted;
}

std::vector<ProximityRelation::Entry> ProximityRelation::entries() const {
  std::vector<Entry> out;
  for (const auto& [key, d] : table_) out.push_back({key.first, key.second, d});
  return out;
}

std::vector<Violation> validate_admissible(const TripleConfig& cfg) {
  std::vector<Violation> out;
  bool expressible = cfg.cdom == ConstraintDomainKind::Herbrand ? expressible_in_herbrand(cfg.qdom)
                                                                 : expressible_in_real(cfg.qdom);
  if (!expressible)
    out.push_back({"not expressible", cfg.qdom.name() + " in " +
                                          (cfg.cdom == ConstraintDomainKind::Herbrand ? "H" : "R")});
  if (!(cfg.prox.domain() == cfg.qdom))
    out.push_back({"not expressible", "proximity valued in " + cfg.prox.domain().name()});
  for (const auto& e : cfg.prox.entries()) {
    std::string entry = "~(" + e.x + ", " + e.y + ") = " + to_string(e.degree);
    const SymbolInfo* a = cfg.signature.lookup(e.x);
    const SymbolInfo* b = cfg.signature.lookup(e.y);
    if (!a || !b) {
      out.push_back({"unknown symbol", entry});
      continue;
    }
    if (a->category == SymbolCategory::Primitive || b->category == SymbolCategory::Primitive) {
      if (a->category == b->category) {
        out.push_back({"primitive pair", entry});
        continue;
      }
    }
    if (a->category != b->category) out.push_back({"category mismatch", entry});
    else if (a->arity != b->arity) out.push_back({"arity mismatch", entry});
  }
  return out;
}

bool is_similarity(const ProximityRelation& rel, const std::set<std::string>& symbols) {
  const QualDomain& dom = rel.domain();
  for (const std::string& x : symbols)
    for (const std::string& y : symbols)
      for (const std::string& z : symbols)
        if (!dom.leq(dom.glb(rel.prox(x, y), rel.prox(y, z)), rel.prox(x, z))) return false;
  return true;
}

QualValue term_prox(const ProximityRelation& rel, const Term& t, const Term& s) {
  const QualDomain& dom = rel.domain();
  if (t == s) return dom.top();
  if (!t.is_apply() || !s.is_apply()) return dom.bottom();
  if (t.arity() != s.arity()) return dom.bottom();
  QualValue d = rel.prox(t.name(), s.name());
  for (std::size_t i = 0; i < t.arity() && !dom.is_bottom(d); ++i)
    d = dom.glb(d, term_prox(rel, t.args()[i], s.args()[i]));
  return d;
}

QualValue atom_prox(const ProximityRelation& rel, const Atom& a, const Atom& b) {
  const QualDomain& dom = rel.domain();
  if (a.kind() != b.kind() || a.arity() != b.arity()) return dom.bottom();
  QualValue d = a.predicate() == b.predicate() ? dom.top() : rel.prox(a.predicate(), b.predicate());
  for (std::size_t i = 0; i < a.arity() && !dom.is_bottom(d); ++i)
    d = dom.glb(d, term_prox(rel, a.args()[i], b.args()[i]));
  return d;
}

bool close_at(const ProximityRelation& rel, const QualValue& lambda, const Term& t, const Term& s) {
  return rel.domain().leq(lambda, term_prox(rel, t, s));
}

ProxDegree prox_degree_modulo(const ProximityRelation& rel, const ConstraintStore& store, const Term& t,
                              const Term& s) {
  Tristate sat = store.satisfiable();
  if (sat == Tristate::False) return {rel.domain().top(), true};
  return {term_prox(rel, store.normal_form(t), store.normal_form(s)), sat == Tristate::True};
}

Tristate close_at_modulo(const ProximityRelation& rel, const QualValue& lambda, const ConstraintStore& store,
                         const Term& t, const Term& s) {
  ProxDegree pd = prox_degree_modulo(rel, store, t, s);
  if (rel.domain().leq(lambda, pd.degree)) return Tristate::True;
  return pd.exact ? Tristate::False : Tristate::Unknown;
}

}  // namespace sqclp
