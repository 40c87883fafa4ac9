#include "support.hpp"

namespace sqclp::detail {

bool match(const Term& pattern, const Term& subject, Bindings& theta) {
  if (pattern.is_var()) {
    auto [it, fresh] = theta.emplace(pattern.name(), subject);
    return fresh || it->second == subject;
  }
  if (pattern.kind() != subject.kind()) return false;
  if (pattern.is_basic()) return pattern.value() == subject.value();
  if (pattern.name() != subject.name() || pattern.arity() != subject.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match(pattern.args()[i], subject.args()[i], theta)) return false;
  return true;
}

bool match(const Atom& pattern, const Atom& subject, Bindings& theta) {
  if (pattern.kind() != subject.kind() || pattern.predicate() != subject.predicate() ||
      pattern.arity() != subject.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match(pattern.args()[i], subject.args()[i], theta)) return false;
  return true;
}

bool insert_maximal(const QualDomain& dom, std::vector<QualValue>& values, const QualValue& v) {
  for (const auto& w : values)
    if (dom.leq(v, w)) return false;
  std::erase_if(values, [&](const QualValue& w) { return dom.leq(w, v); });
  values.push_back(v);
  return true;
}

}  // namespace sqclp::detail
