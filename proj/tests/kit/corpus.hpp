#pragma once

// Random constraint-free programs over U for the cross-checks, plus small shared helpers.

#include "sqclp/program.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sqclp::testkit {

struct CorpusShape {
  std::size_t max_clauses = 5;
  std::size_t max_constructors = 3;
  std::size_t max_predicates = 3;
  std::size_t max_clause_vars = 3;
  std::size_t max_arity = 2;
};

struct CorpusProgram {
  std::uint64_t seed = 0;
  std::string source;
  Program program;
  std::vector<std::string> predicates;  // every defined predicate, including proximity-only ones
};

CorpusProgram random_program(std::uint64_t seed, const CorpusShape& shape = {});

// Base seed for randomized suites: SQCLP_SEED when set, otherwise `fallback`.
std::uint64_t base_seed(std::uint64_t fallback);

// Goals p(X1,..)#W with fresh variables, one per predicate, plus a two-atom conjunction.
std::vector<Goal> corpus_goals(const CorpusProgram& cp, std::mt19937_64& rng);

std::string read_text(const std::string& path);

}  // namespace sqclp::testkit
