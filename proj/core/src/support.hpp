#pragma once

// Small helpers shared by the semantics, search and oracle code.

#include "sqclp/qualdom.hpp"
#include "sqclp/terms.hpp"

#include <map>
#include <string>
#include <vector>

namespace sqclp::detail {

using Bindings = std::map<std::string, Term>;

// One-way matching: extends `theta` so that pattern·theta == subject.
bool match(const Term& pattern, const Term& subject, Bindings& theta);
bool match(const Atom& pattern, const Atom& subject, Bindings& theta);

// Keeps `values` an antichain of maximal elements. Returns false when v was dominated.
bool insert_maximal(const QualDomain& dom, std::vector<QualValue>& values, const QualValue& v);

// Cartesian product of choice lists, visited in lexicographic order. Stops when visit returns false.
template <class T, class F>
bool for_each_choice(const std::vector<std::vector<T>>& options, F&& visit) {
  std::vector<std::size_t> idx(options.size(), 0);
  for (const auto& o : options)
    if (o.empty()) return true;
  std::vector<const T*> pick(options.size());
  while (true) {
    for (std::size_t i = 0; i < options.size(); ++i) pick[i] = &options[i][idx[i]];
    if (!visit(pick)) return false;
    std::size_t k = options.size();
    while (k > 0) {
      --k;
      if (++idx[k] < options[k].size()) break;
      idx[k] = 0;
      if (k == 0) return true;
    }
    if (options.empty()) return true;
  }
}

}  // namespace sqclp::detail
