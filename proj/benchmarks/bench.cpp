#include "sqclp/engine.hpp"
#include "sqclp/semantics.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

using namespace sqclp;

namespace {

Program load(const std::string& name) {
  std::ifstream in(std::string(SQCLP_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

const ConstraintStore& running_store() {
  static const ConstraintStore store(parse_constraints("cp_>(X, 1.0), op_+(A, A, X), op_*(2.0, A, Y)"));
  return store;
}

// Chain p0 <- p1 <- ... <- pn over a proximity ladder, so each step has two candidate clauses.
Program ladder(int n) {
  std::ostringstream src;
  src << "#qdom U\n";
  for (int i = 0; i <= n; ++i) src << "predicate p" << i << "/1\npredicate s" << i << "/1\n";
  for (int i = 0; i <= n; ++i) src << "~(p" << i << ", s" << i << ") = 0.9\n";
  for (int i = 0; i < n; ++i) src << "p" << i << "(c(X)) <-0.95- p" << i + 1 << "(X)\n";
  src << "p" << n << "(a)\n";
  return parse_program(src.str());
}

}  // namespace

void BM_SolveLibrary(benchmark::State& state) {
  Program p = load("library.sqclp");
  Goal g = parse_goal("goodWork(X)#W | W >= (0.55,30)", p.qdom);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, g));
}
BENCHMARK(BM_SolveLibrary);

void BM_SolveLadder(benchmark::State& state) {
  Program p = ladder(static_cast<int>(state.range(0)));
  Goal g = parse_goal("s0(X)#W", p.qdom);
  SolveOptions opts;
  opts.depth_limit = static_cast<std::size_t>(state.range(0)) + 2;
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, g, opts));
}
BENCHMARK(BM_SolveLadder)->Arg(4)->Arg(8)->Arg(16);

void BM_FixpointRunning(benchmark::State& state) {
  Program p = load("running.sqclp");
  TermUniverse::Options opts;
  opts.depth = static_cast<std::size_t>(state.range(0));
  TermUniverse universe = TermUniverse::build(p, running_store(), opts);
  for (auto _ : state) benchmark::DoNotOptimize(tp_lfp(p, running_store(), universe, 16));
}
BENCHMARK(BM_FixpointRunning)->Arg(1)->Arg(2);

void BM_StoreNormalization(benchmark::State& state) {
  std::vector<Atom> atoms;
  for (int i = 0; i < state.range(0); ++i) {
    std::string a = "A" + std::to_string(i), b = "A" + std::to_string(i + 1);
    atoms.push_back(parse_atom("op_+(" + a + ", 1, " + b + ")"));
    atoms.push_back(Atom::equation(Term::variable("Z" + std::to_string(i)),
                                   Term::apply("c", {Term::variable(a), Term::variable("Z" + std::to_string(i + 1))})));
  }
  atoms.push_back(parse_atom("cp_>=(A0, 0)"));
  for (auto _ : state) {
    ConstraintStore store(atoms);
    benchmark::DoNotOptimize(store.satisfiable());
  }
}
BENCHMARK(BM_StoreNormalization)->Arg(4)->Arg(16)->Arg(64);

void BM_StoreEntailment(benchmark::State& state) {
  Atom goal = parse_atom("cp_>(X, 2)");
  for (auto _ : state) benchmark::DoNotOptimize(running_store().entails(goal));
}
BENCHMARK(BM_StoreEntailment);
BENCHMARK_MAIN();
