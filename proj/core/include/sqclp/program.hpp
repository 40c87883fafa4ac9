#pragma once

#include "sqclp/constraints.hpp"
#include "sqclp/proximity.hpp"
#include "sqclp/qualdom.hpp"
#include "sqclp/terms.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqclp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised by parse_program when the parsed triple is not admissible.
class AdmissibilityError : public std::runtime_error {
 public:
  explicit AdmissibilityError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct BodyItem {
  Atom atom;
  Threshold threshold;
  friend bool operator==(const BodyItem&, const BodyItem&) = default;
};

struct Clause {
  std::string id;  // R1, R2, ... in file order
  Atom head;
  QualValue alpha;
  std::vector<BodyItem> body;
  friend bool operator==(const Clause&, const Clause&) = default;
};

std::set<std::string> variables(const Clause& c);

struct ClauseFlags {
  bool attenuation_free = false;
  bool threshold_free = false;
  bool qualification_free = false;
  bool constraint_free = false;
  friend bool operator==(const ClauseFlags&, const ClauseFlags&) = default;
};

ClauseFlags classify_clause(const QualDomain& dom, const Clause& c);

struct Program {
  QualDomain qdom = QualDomain::certainty();
  ConstraintDomainKind cdom = ConstraintDomainKind::Real;
  Signature signature;
  ProximityRelation prox{QualDomain::certainty()};
  std::vector<Clause> clauses;

  TripleConfig config() const { return {prox, qdom, cdom, signature}; }
  const Clause* clause(const std::string& id) const;
};

bool operator==(const Program& a, const Program& b);

struct GoalItem {
  Atom atom;
  std::string qvar;
  Threshold threshold;
  friend bool operator==(const GoalItem&, const GoalItem&) = default;
};

struct Goal {
  std::vector<GoalItem> items;
  std::vector<std::string> qualification_variables() const;
  std::set<std::string> variables() const;
  friend bool operator==(const Goal&, const Goal&) = default;
};

struct ParseOptions {
  bool strict = false;  // no auto-declaration of undeclared symbols
};

struct ParsedProgram {
  Program program;
  std::vector<Violation> violations;
};

// Throws ParseError on syntax errors and declaration conflicts; admissibility problems are
// returned as violations.
ParsedProgram parse_program_text(std::string_view text, const ParseOptions& opts = {});
// Like parse_program_text but throws AdmissibilityError when violations exist.
Program parse_program(std::string_view text, const ParseOptions& opts = {});

Goal parse_goal(std::string_view text, const QualDomain& dom);

Term parse_term(std::string_view text);
Atom parse_atom(std::string_view text);
// Comma-separated equations and primitive atoms.
std::vector<Atom> parse_constraints(std::string_view text);

std::string to_source(const Program& p);
std::string to_string(const Clause& c);
std::string to_string(const Goal& g);

}  // namespace sqclp
