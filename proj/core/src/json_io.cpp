#include "sqclp/json_io.hpp"

#include "sqclp/program.hpp"

#include <json.hpp>

#include <stdexcept>

namespace sqclp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string text_of(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw std::invalid_argument(std::string(what) + " must be a string");
}

QualValue degree_from(const json& j, const QualDomain& dom) {
  try {
    return parse_qual_value(dom, text_of(j, "degree"));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("bad degree: ") + e.what());
  }
}

template <class F>
auto syntax(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw std::invalid_argument(e.what());
  }
}

ConstraintStore store_from(const json& j) {
  if (j.is_null()) return ConstraintStore();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find_first_not_of(" \t") == std::string::npos) return ConstraintStore();
    return ConstraintStore(syntax([&] { return parse_constraints(s); }));
  }
  if (!j.is_array()) throw std::invalid_argument("store must be an array of atoms");
  std::vector<Atom> atoms;
  for (const json& a : j) {
    std::vector<Atom> one = syntax([&] { return parse_constraints(text_of(a, "store atom")); });
    atoms.insert(atoms.end(), one.begin(), one.end());
  }
  return ConstraintStore(std::move(atoms));
}

ordered_json store_json(const ConstraintStore& s) {
  ordered_json out = ordered_json::array();
  for (const Atom& a : s.atoms()) out.push_back(to_string(a));
  return out;
}

ordered_json qcatom_json(const QcAtom& phi) {
  ordered_json j;
  j["atom"] = to_string(phi.atom);
  j["degree"] = to_string(phi.degree);
  j["store"] = store_json(phi.store);
  return j;
}

Atom atom_from(const json& j) {
  return syntax([&] { return parse_atom(text_of(j, "atom")); });
}

ProofTree proof_from(const json& j, const QualDomain& dom, const ConstraintStore* inherited) {
  const json& node = field(j, "node");
  ConstraintStore store = node.contains("store") ? store_from(node.at("store"))
                          : inherited            ? *inherited
                                                 : ConstraintStore();
  QcAtom phi{atom_from(field(node, "atom")), degree_from(field(node, "degree"), dom), store};
  std::string rule = text_of(field(j, "rule"), "rule");
  RuleTag tag;
  if (rule == "SQDA") tag = RuleTag::SQDA;
  else if (rule == "SQEA") tag = RuleTag::SQEA;
  else if (rule == "SQPA") tag = RuleTag::SQPA;
  else throw std::invalid_argument("unknown rule '" + rule + "'");

  ProofTree t{std::move(phi), tag, {}, {}, {}};
  if (j.contains("clause")) t.clause_id = text_of(j.at("clause"), "clause");
  if (j.contains("theta")) {
    const json& th = j.at("theta");
    if (!th.is_object()) throw std::invalid_argument("theta must be an object");
    std::map<std::string, Term> b;
    for (const auto& [v, term] : th.items())
      b.emplace(v, syntax([&] { return parse_term(text_of(term, "binding")); }));
    t.theta = Substitution(b);
  }
  if (j.contains("children")) {
    if (!j.at("children").is_array()) throw std::invalid_argument("children must be an array");
    for (const json& c : j.at("children")) t.children.push_back(proof_from(c, dom, &t.node.store));
  }
  return t;
}

ordered_json proof_json(const ProofTree& t) {
  ordered_json j;
  j["node"] = qcatom_json(t.node);
  j["rule"] = to_string(t.rule);
  if (t.rule == RuleTag::SQDA) {
    j["clause"] = t.clause_id;
    ordered_json th = ordered_json::object();
    for (const auto& [v, term] : t.theta.bindings()) th[v] = to_string(term);
    j["theta"] = th;
  }
  ordered_json kids = ordered_json::array();
  for (const ProofTree& c : t.children) kids.push_back(proof_json(c));
  j["children"] = kids;
  return j;
}

ordered_json solution_json(const GoalSolution& s) {
  ordered_json j;
  ordered_json sigma = ordered_json::object();
  for (const auto& [v, t] : s.sigma.bindings()) sigma[v] = to_string(t);
  ordered_json mu = ordered_json::object();
  for (const auto& [w, d] : s.mu) mu[w] = to_string(d);
  j["sigma"] = sigma;
  j["mu"] = mu;
  j["store"] = store_json(s.store);
  return j;
}

ordered_json interpretation_json(const Interpretation& interp) {
  ordered_json gens = ordered_json::array();
  for (const QcAtom& g : interp.generators) gens.push_back(qcatom_json(g));
  return gens;
}

}  // namespace

ConstraintStore store_from_json(const std::string& text) { return store_from(parse_json(text)); }
std::string store_to_json(const ConstraintStore& store) { return store_json(store).dump(); }

QcAtom qcatom_from_json(const std::string& text, const QualDomain& dom) {
  json j = parse_json(text);
  ConstraintStore store = j.contains("store") ? store_from(j.at("store")) : ConstraintStore();
  return {atom_from(field(j, "atom")), degree_from(field(j, "degree"), dom), store};
}

std::string qcatom_to_json(const QcAtom& phi) { return qcatom_json(phi).dump(2); }

ProofTree proof_from_json(const std::string& text, const QualDomain& dom) {
  return proof_from(parse_json(text), dom, nullptr);
}

std::string proof_to_json(const ProofTree& tree) { return proof_json(tree).dump(2); }

GoalSolution solution_from_json(const std::string& text, const QualDomain& dom) {
  json j = parse_json(text);
  GoalSolution s{Substitution(), {}, ConstraintStore()};
  if (j.contains("sigma")) {
    std::map<std::string, Term> b;
    for (const auto& [v, t] : j.at("sigma").items()) b.emplace(v, syntax([&] { return parse_term(text_of(t, "binding")); }));
    s.sigma = Substitution(b);
  }
  for (const auto& [w, d] : field(j, "mu").items()) s.mu.insert_or_assign(w, degree_from(d, dom));
  if (j.contains("store")) s.store = store_from(j.at("store"));
  return s;
}

std::string solution_to_json(const GoalSolution& sol) { return solution_json(sol).dump(2); }

std::string solutions_to_json(const SolveResult& res) {
  ordered_json j;
  ordered_json sols = ordered_json::array();
  for (const GoalSolution& s : res.solutions) sols.push_back(solution_json(s));
  j["solutions"] = sols;
  j["depth_cutoff"] = res.cutoff;
  j["unknown"] = res.unknown;
  j["truncated"] = res.truncated;
  j["exhausted"] = res.exhausted;
  return j.dump(2);
}

std::string interpretation_to_json(const Interpretation& interp) { return interpretation_json(interp).dump(2); }

std::string model_to_json(const LfpResult& lfp) {
  ordered_json j;
  ordered_json its = ordered_json::array();
  for (std::size_t i = 0; i < lfp.iterates.size(); ++i) {
    ordered_json it;
    it["iteration"] = i + 1;
    it["generators"] = interpretation_json(lfp.iterates[i]);
    its.push_back(it);
  }
  j["iterations"] = its;
  j["converged"] = lfp.converged;
  j["model"] = interpretation_json(lfp.model);
  return j.dump(2);
}

}  // namespace sqclp
