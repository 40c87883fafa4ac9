// Command-line front end: check, solve, model, prove, verify.
// Exit codes: 0 success, 1 failure, 2 usage error, 3 undecided (Unknown verdict).

#include "sqclp/engine.hpp"
#include "sqclp/json_io.hpp"
#include "sqclp/program.hpp"
#include "sqclp/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kUndecided = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// JSON arguments may be given inline or as a file path.
std::string json_arg(const std::string& arg) {
  auto start = arg.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && (arg[start] == '{' || arg[start] == '[' || arg[start] == '"')) return arg;
  return read_file(arg);
}

sqclp::Program load(const std::string& path) { return sqclp::parse_program(read_file(path)); }

int exit_for(sqclp::Tristate t) {
  switch (t) {
    case sqclp::Tristate::True: return kOk;
    case sqclp::Tristate::False: return kFail;
    case sqclp::Tristate::Unknown: return kUndecided;
  }
  return kFail;
}

int cmd_check(const std::string& file, bool strict) {
  nlohmann::ordered_json out;
  try {
    sqclp::ParsedProgram parsed = sqclp::parse_program_text(read_file(file), {strict});
    out["qdom"] = parsed.program.qdom.name();
    out["cdom"] = parsed.program.cdom == sqclp::ConstraintDomainKind::Real ? "R" : "H";
    out["clauses"] = parsed.program.clauses.size();
    out["admissible"] = parsed.violations.empty();
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (const auto& v : parsed.violations) {
      vs.push_back({{"kind", v.kind}, {"detail", v.detail}});
      std::cerr << v.kind << ": " << v.detail << "\n";
    }
    out["violations"] = vs;
    std::cout << out.dump(2) << "\n";
    return parsed.violations.empty() ? kOk : kFail;
  } catch (const sqclp::ParseError& e) {
    out["admissible"] = false;
    out["parse_error"] = e.what();
    std::cout << out.dump(2) << "\n";
    std::cerr << file << ":" << e.what() << "\n";
    return kFail;
  }
}

int cmd_solve(const std::string& file, const std::string& goal_text, std::size_t depth, std::size_t max,
              const std::string& store, bool best, std::size_t steps) {
  sqclp::Program prog = load(file);
  sqclp::Goal goal = sqclp::parse_goal(goal_text, prog.qdom);
  sqclp::SolveOptions opts;
  opts.depth_limit = depth;
  opts.max_solutions = max;
  opts.best_only = best;
  opts.max_steps = steps;
  if (!store.empty()) opts.store_seed = sqclp::store_from_json(json_arg(store));
  sqclp::SolveResult res = sqclp::solve(prog, goal, opts);
  std::cout << sqclp::solutions_to_json(res) << "\n";
  if (res.cutoff) std::cerr << "note: depth limit " << depth << " pruned some branches\n";
  if (res.unknown) std::cerr << "note: some branches were dropped on undecided constraints\n";
  if (res.exhausted) std::cerr << "note: step budget " << steps << " ran out\n";
  if (!res.solutions.empty()) return kOk;
  return res.unknown || res.exhausted ? kUndecided : kFail;
}

int cmd_model(const std::string& file, const std::string& store, std::size_t depth, std::size_t iters,
              std::size_t fresh) {
  sqclp::Program prog = load(file);
  sqclp::ConstraintStore pi = store.empty() ? sqclp::ConstraintStore() : sqclp::store_from_json(json_arg(store));
  sqclp::TermUniverse u = sqclp::TermUniverse::build(prog, pi, {depth, fresh, true});
  sqclp::LfpResult lfp = sqclp::tp_lfp(prog, pi, u, iters);
  std::cout << sqclp::model_to_json(lfp) << "\n";
  if (!lfp.converged) std::cerr << "note: no fixpoint within " << iters << " iterations\n";
  return lfp.converged ? kOk : kFail;
}

int cmd_prove(const std::string& file, const std::string& qcatom, std::size_t depth) {
  sqclp::Program prog = load(file);
  sqclp::QcAtom phi = sqclp::qcatom_from_json(json_arg(qcatom), prog.qdom);
  sqclp::DeriveResult r = sqclp::derive(prog, phi, depth);
  nlohmann::ordered_json out;
  if (r.proof) {
    sqclp::ProofStats st = sqclp::proof_stats(*r.proof);
    out["found"] = true;
    out["check"] = sqclp::to_string(sqclp::check_proof(prog, *r.proof));
    out["stats"] = {{"size", st.size}, {"defined_steps", st.defined_steps}};
    out["proof"] = nlohmann::ordered_json::parse(sqclp::proof_to_json(*r.proof));
  } else {
    out["found"] = false;
  }
  out["depth_cutoff"] = r.cutoff;
  out["unknown"] = r.unknown;
  std::cout << out.dump(2) << "\n";
  if (r.proof) return kOk;
  return r.unknown || r.cutoff ? kUndecided : kFail;
}

int cmd_verify(const std::string& file, const std::string& proof, const std::string& solution,
               const std::string& goal_text, std::size_t depth) {
  sqclp::Program prog = load(file);
  nlohmann::ordered_json out;
  sqclp::Tristate verdict;
  if (!proof.empty()) {
    sqclp::ProofTree tree = sqclp::proof_from_json(json_arg(proof), prog.qdom);
    try {
      verdict = sqclp::check_proof(prog, tree);
    } catch (const sqclp::MalformedProof& e) {
      out["verdict"] = "False";
      out["malformed"] = e.what();
      std::cout << out.dump(2) << "\n";
      std::cerr << "malformed proof: " << e.what() << "\n";
      return kFail;
    }
    sqclp::ProofStats st = sqclp::proof_stats(tree);
    out["stats"] = {{"size", st.size}, {"defined_steps", st.defined_steps}};
  } else {
    if (goal_text.empty()) throw UsageError("--solution needs --goal");
    sqclp::Goal goal = sqclp::parse_goal(goal_text, prog.qdom);
    sqclp::GoalSolution sol = sqclp::solution_from_json(json_arg(solution), prog.qdom);
    verdict = sqclp::is_solution(prog, goal, sol, depth);
  }
  out["verdict"] = sqclp::to_string(verdict);
  std::cout << out.dump(2) << "\n";
  return exit_for(verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximity-qualified constraint logic programs: checking, solving and proofs"};
  app.require_subcommand(1);

  std::string file, goal, store, qcatom, proof, solution;
  std::size_t depth = 8, max = 1000, udepth = 2, iters = 20, fresh = 1;
  bool strict = false;
  bool best = false;
  std::size_t steps = 0;

  auto* check = app.add_subcommand("check", "parse a program and report admissibility");
  check->add_option("file", file, "program file")->required();
  check->add_flag("--strict", strict, "reject undeclared symbols");

  auto* solve = app.add_subcommand("solve", "solve a goal");
  solve->add_option("file", file, "program file")->required();
  solve->add_option("--goal", goal, "goal, e.g. \"p(X)#W | W >= 0.5\"")->required();
  solve->add_option("--depth", depth, "nested defined steps allowed")->check(CLI::PositiveNumber);
  solve->add_option("--max", max, "stop after this many answers")->check(CLI::PositiveNumber);
  solve->add_flag("--best", best, "keep only the best degrees per answer substitution");
  solve->add_option("--steps", steps, "search work budget, 0 for none");
  solve->add_option("--store", store, "seed store: JSON array of constraints, inline or a file");

  auto* model = app.add_subcommand("model", "iterate the immediate consequence operator");
  model->add_option("file", file, "program file")->required();
  model->add_option("--store", store, "store: JSON array of constraints, inline or a file");
  model->add_option("--universe-depth", udepth, "term nesting in the instantiation universe");
  model->add_option("--iters", iters, "iteration bound")->check(CLI::PositiveNumber);
  model->add_option("--fresh", fresh, "fresh variables in the universe");

  auto* prove = app.add_subcommand("prove", "search for a proof tree of a qc-atom");
  prove->add_option("file", file, "program file")->required();
  prove->add_option("--qcatom", qcatom, "{\"atom\":..,\"degree\":..,\"store\":[..]}, inline or a file")->required();
  prove->add_option("--depth", depth, "nested defined steps allowed")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check a proof tree or a goal solution");
  verify->add_option("file", file, "program file")->required();
  auto* p_opt = verify->add_option("--proof", proof, "proof tree JSON, inline or a file");
  auto* s_opt = verify->add_option("--solution", solution, "solution JSON, inline or a file");
  verify->add_option("--goal", goal, "goal the solution answers");
  verify->add_option("--depth", depth, "depth limit when re-deriving")->check(CLI::PositiveNumber);
  p_opt->excludes(s_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, strict);
    if (*solve) return cmd_solve(file, goal, depth, max, store, best, steps);
    if (*model) return cmd_model(file, store, udepth, iters, fresh);
    if (*prove) return cmd_prove(file, qcatom, depth);
    if (*verify) {
      if (proof.empty() && solution.empty()) throw UsageError("verify needs --proof or --solution");
      return cmd_verify(file, proof, solution, goal, depth);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const sqclp::AdmissibilityError& e) {
    for (const auto& v : e.violations()) std::cerr << v.kind << ": " << v.detail << "\n";
    return kFail;
  } catch (const sqclp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
