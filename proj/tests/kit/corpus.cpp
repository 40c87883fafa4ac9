#include "corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqclp::testkit {

namespace {

struct Sym {
  std::string name;
  std::size_t arity;
};

class Builder {
 public:
  Builder(std::uint64_t seed, const CorpusShape& shape) : rng_(seed), shape_(shape) {}

  std::string build() {
    pick_constructors();
    pick_predicates();
    std::ostringstream out;
    out << "#qdom U\n#cdom R\n";
    std::vector<std::string> prox = proximity_lines();
    for (const Sym& c : cons_) out << "constructor " << c.name << "/" << c.arity << "\n";
    for (const Sym& p : preds_) out << "predicate " << p.name << "/" << p.arity << "\n";
    for (const Sym& p : shadow_) out << "predicate " << p.name << "/" << p.arity << "\n";
    for (const std::string& line : prox) out << line << "\n";
    std::size_t n = between(1, shape_.max_clauses);
    for (std::size_t i = 0; i < n; ++i) out << clause(i == 0) << "\n";
    return out.str();
  }

 private:
  std::size_t between(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& any_of(const std::vector<T>& xs) { return xs[between(0, xs.size() - 1)]; }

  void pick_constructors() {
    // at least one constant so the ground universe is non-empty
    static const std::vector<std::string> names{"a", "b", "f"};
    std::size_t k = between(1, shape_.max_constructors);
    cons_.push_back({names[0], 0});
    for (std::size_t i = 1; i < k; ++i) cons_.push_back({names[i], between(0, 2)});
  }

  void pick_predicates() {
    static const std::vector<std::string> names{"p", "q", "r"};
    std::size_t k = between(1, shape_.max_predicates);
    for (std::size_t i = 0; i < k; ++i) preds_.push_back({names[i], between(0, shape_.max_arity)});
  }

  std::vector<std::string> proximity_lines() {
    static const std::vector<std::string> degrees{"0.4", "0.5", "0.6", "0.7", "0.8", "0.9"};
    std::vector<std::string> out;
    auto relate = [&](const std::vector<Sym>& syms) {
      for (std::size_t i = 0; i < syms.size(); ++i)
        for (std::size_t j = i + 1; j < syms.size(); ++j)
          if (syms[i].arity == syms[j].arity && coin(0.5))
            out.push_back("~(" + syms[i].name + ", " + syms[j].name + ") = " + any_of(degrees));
    };
    relate(cons_);
    relate(preds_);
    // a predicate reachable only through proximity
    if (coin(0.4)) {
      const Sym& base = any_of(preds_);
      out.push_back("~(" + base.name + ", " + base.name + "x) = " + any_of(degrees));
      shadow_.push_back({base.name + "x", base.arity});
    }
    return out;
  }

  std::string term(std::size_t depth) {
    if (coin(0.45) || depth == 0) {
      if (coin(0.6)) return any_of(vars_);
      std::vector<Sym> constants;
      for (const Sym& c : cons_)
        if (c.arity == 0) constants.push_back(c);
      return any_of(constants).name;
    }
    const Sym& c = any_of(cons_);
    if (c.arity == 0) return c.name;
    std::string s = c.name + "(";
    for (std::size_t i = 0; i < c.arity; ++i) s += (i ? "," : "") + term(depth - 1);
    return s + ")";
  }

  std::string atom(const Sym& p) {
    if (p.arity == 0) return p.name;
    std::string s = p.name + "(";
    for (std::size_t i = 0; i < p.arity; ++i) s += (i ? "," : "") + term(1);
    return s + ")";
  }

  std::string clause(bool fact) {
    static const std::vector<std::string> alphas{"1.0", "0.9", "0.8", "0.7"};
    static const std::vector<std::string> thresholds{"#0.5", "#0.6", "#0.8"};
    static const std::vector<std::string> all_vars{"X", "Y", "Z"};
    vars_.assign(all_vars.begin(), all_vars.begin() + static_cast<long>(between(1, shape_.max_clause_vars)));
    std::string s = atom(any_of(preds_)) + " <-" + any_of(alphas) + "-";
    std::size_t body = fact ? 0 : between(0, 2);
    for (std::size_t j = 0; j < body; ++j) {
      s += j ? ", " : " ";
      if (coin(0.15)) {
        s += any_of(vars_) + " == " + term(1);
      } else {
        std::vector<Sym> callable = preds_;
        callable.insert(callable.end(), shadow_.begin(), shadow_.end());
        s += atom(any_of(callable));
        if (coin(0.3)) s += any_of(thresholds);
      }
    }
    return s;
  }

  std::mt19937_64 rng_;
  CorpusShape shape_;
  std::vector<Sym> cons_, preds_, shadow_;
  std::vector<std::string> vars_{"X"};
};

}  // namespace

CorpusProgram random_program(std::uint64_t seed, const CorpusShape& shape) {
  CorpusProgram cp;
  cp.seed = seed;
  cp.source = Builder(seed, shape).build();
  cp.program = parse_program(cp.source);
  for (const auto& [name, info] : cp.program.signature.symbols())
    if (info.category == SymbolCategory::Defined) cp.predicates.push_back(name);
  return cp;
}

std::uint64_t base_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("SQCLP_SEED")) return std::strtoull(env, nullptr, 10);
  return fallback;
}

std::vector<Goal> corpus_goals(const CorpusProgram& cp, std::mt19937_64& rng) {
  std::vector<Goal> goals;
  std::vector<Atom> pattern;
  std::size_t next_var = 0;
  for (const std::string& p : cp.predicates) {
    const SymbolInfo* info = cp.program.signature.lookup(p);
    std::vector<Term> args;
    for (std::size_t i = 0; i < info->arity; ++i) args.push_back(Term::variable("V" + std::to_string(++next_var)));
    Atom a = Atom::defined(p, args);
    pattern.push_back(a);
    goals.push_back(Goal{{GoalItem{a, "W", Threshold::any()}}});
  }
  if (pattern.size() >= 2) {
    std::shuffle(pattern.begin(), pattern.end(), rng);
    // share a variable between the two atoms when both have arguments
    Atom first = pattern[0], second = pattern[1];
    if (first.arity() > 0 && second.arity() > 0) {
      std::vector<Term> args = second.args();
      args[0] = first.args()[0];
      second = second.with_args(args);
    }
    goals.push_back(Goal{{GoalItem{first, "W1", Threshold::any()},
                          GoalItem{second, "W2", Threshold::at_least(QualValue::certainty(Rational(1, 2)))}}});
  }
  return goals;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sqclp::testkit
