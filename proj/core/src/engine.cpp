#include "sqclp/engine.hpp"

#include "search.hpp"
#include "support.hpp"

#include <algorithm>

namespace sqclp {

std::string to_string(const GoalSolution& s) {
  std::string out = to_string(s.sigma) + " {";
  bool first = true;
  for (const auto& [w, d] : s.mu) {
    if (!first) out += ", ";
    first = false;
    out += w + " -> " + to_string(d);
  }
  return out + "} " + to_string(s.store);
}

namespace {

bool dominated(const QualDomain& dom, const std::map<std::string, QualValue>& a,
               const std::map<std::string, QualValue>& b) {
  for (const auto& [w, d] : a)
    if (!dom.leq(d, b.at(w))) return false;
  return true;
}

}  // namespace

SolveResult solve(const Program& prog, const Goal& goal, const SolveOptions& opts) {
  const QualDomain& dom = prog.qdom;
  search::Query q;
  q.store = opts.store_seed.value_or(ConstraintStore());
  q.grow_store = true;
  q.want_proofs = false;
  q.max_steps = opts.max_steps;
  q.answer_depth = opts.universe_depth;
  for (const GoalItem& item : goal.items) {
    q.atoms.push_back(item.atom);
    q.thresholds.push_back(item.threshold);
  }
  std::set<std::string> store_vars = q.store.variables();
  for (const std::string& v : goal.variables())
    if (!store_vars.contains(v)) q.bindable.insert(v);

  SolveResult res;
  std::map<std::string, std::vector<std::size_t>> by_key;
  std::vector<bool> alive;
  std::size_t live = 0;
  search::Report rep = search::run(prog, q, opts.depth_limit, [&](const search::Answer& a) {
    std::map<std::string, Term> sigma;
    for (const auto& [v, t] : a.sigma.bindings()) sigma.emplace(v, a.store.canonical_form(t));
    GoalSolution s{Substitution(sigma), {}, a.store};
    for (std::size_t i = 0; i < goal.items.size(); ++i) s.mu.insert_or_assign(goal.items[i].qvar, a.degrees[i]);

    auto& slot = by_key[to_string(s.sigma) + "|" + to_string(s.store)];
    for (std::size_t idx : slot) {
      if (!alive[idx]) continue;
      if (res.solutions[idx].mu == s.mu) return true;
      if (opts.best_only && dominated(dom, s.mu, res.solutions[idx].mu)) return true;
    }
    if (opts.best_only)
      for (std::size_t idx : slot)
        if (alive[idx] && dominated(dom, res.solutions[idx].mu, s.mu)) {
          alive[idx] = false;
          --live;
        }
    slot.push_back(res.solutions.size());
    res.solutions.push_back(std::move(s));
    alive.push_back(true);
    ++live;
    if (live >= opts.max_solutions) {
      res.truncated = true;
      return false;
    }
    return true;
  });
  std::vector<GoalSolution> kept;
  for (std::size_t i = 0; i < res.solutions.size(); ++i)
    if (alive[i]) kept.push_back(std::move(res.solutions[i]));
  res.solutions = std::move(kept);
  res.cutoff = rep.cutoff;
  res.unknown = rep.unknown;
  res.exhausted = rep.exhausted;
  return res;
}

Tristate is_solution(const Program& prog, const Goal& goal, const GoalSolution& sol, std::size_t depth_limit) {
  const QualDomain& dom = prog.qdom;
  for (const GoalItem& item : goal.items) {
    auto it = sol.mu.find(item.qvar);
    if (it == sol.mu.end() || !dom.contains(it->second) || dom.is_bottom(it->second)) return Tristate::False;
    if (!dom.threshold_ok(it->second, item.threshold)) return Tristate::False;
  }
  Tristate verdict = sol.store.satisfiable();
  if (verdict == Tristate::False) return verdict;
  for (const GoalItem& item : goal.items) {
    QcAtom phi{sol.sigma.apply(item.atom), sol.mu.at(item.qvar), sol.store};
    DeriveResult r = derive(prog, phi, depth_limit);
    if (r.proof) {
      verdict = tri_and(verdict, check_proof(prog, *r.proof));
    } else {
      verdict = tri_and(verdict, r.cutoff || r.unknown ? Tristate::Unknown : Tristate::False);
    }
    if (verdict == Tristate::False) return verdict;
  }
  return verdict;
}

Tristate subsumes(const Program& prog, const Goal& goal, const GoalSolution& general, const GoalSolution& ground) {
  const QualDomain& dom = prog.qdom;
  for (const GoalItem& item : goal.items) {
    auto g = general.mu.find(item.qvar);
    auto h = ground.mu.find(item.qvar);
    if (g == general.mu.end() || h == ground.mu.end()) return Tristate::False;
    if (!dom.leq(h->second, g->second)) return Tristate::False;
  }
  detail::Bindings nu;
  for (const std::string& v : goal.variables()) {
    Term pattern = general.sigma.apply(Term::variable(v));
    Term target = ground.sigma.apply(Term::variable(v));
    if (!detail::match(pattern, target, nu)) return Tristate::False;
  }
  if (general.store.empty()) return Tristate::True;
  // ν must extend to a solution of the answer store.
  ConstraintStore rest = general.store.substituted(Substitution(nu));
  return ConstraintStore(ground.store).with(rest.atoms()).satisfiable();
}

}  // namespace sqclp
