#include "sqclp/program.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace sqclp {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string out = "program is not admissible:";
  for (const Violation& v : vs) out += " [" + v.kind + "] " + v.detail + ";";
  return out;
}

}  // namespace

AdmissibilityError::AdmissibilityError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

std::set<std::string> variables(const Clause& c) {
  std::set<std::string> out;
  collect_variables(c.head, out);
  for (const BodyItem& b : c.body) collect_variables(b.atom, out);
  return out;
}

ClauseFlags classify_clause(const QualDomain& dom, const Clause& c) {
  ClauseFlags f;
  f.attenuation_free = dom.is_top(c.alpha);
  f.threshold_free = std::all_of(c.body.begin(), c.body.end(), [](const BodyItem& b) { return b.threshold.is_any(); });
  f.qualification_free = f.attenuation_free && f.threshold_free;
  f.constraint_free =
      std::all_of(c.body.begin(), c.body.end(), [](const BodyItem& b) { return b.atom.kind() == Atom::Kind::Defined; });
  return f;
}

const Clause* Program::clause(const std::string& id) const {
  for (const Clause& c : clauses)
    if (c.id == id) return &c;
  return nullptr;
}

bool operator==(const Program& a, const Program& b) {
  if (!(a.qdom == b.qdom) || a.cdom != b.cdom || a.signature.symbols() != b.signature.symbols()) return false;
  auto ea = a.prox.entries(), eb = b.prox.entries();
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i].x != eb[i].x || ea[i].y != eb[i].y || !(ea[i].degree == eb[i].degree)) return false;
  return a.clauses == b.clauses;
}

std::vector<std::string> Goal::qualification_variables() const {
  std::vector<std::string> out;
  for (const GoalItem& g : items) out.push_back(g.qvar);
  return out;
}

std::set<std::string> Goal::variables() const {
  std::set<std::string> out;
  for (const GoalItem& g : items) collect_variables(g.atom, out);
  return out;
}

namespace {

using lex::Tok;
using lex::Token;

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t* fresh) : toks_(std::move(tokens)), fresh_(fresh) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_item_end() const { return at(Tok::End) || at(Tok::Dot); }
  Token next() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  Token expect(Tok k) {
    if (!at(k)) fail("expected " + lex::describe(k) + ", found " + found());
    return next();
  }
  std::string found() const { return at(Tok::End) ? "end of line" : "'" + peek().text + "'"; }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(message, t.line, t.column);
  }
  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

  Term term() {
    Token t = peek();
    switch (t.kind) {
      case Tok::Var: {
        next();
        if (t.text == "_") return Term::variable("_Anon" + std::to_string(++*fresh_));
        return Term::variable(t.text);
      }
      case Tok::Number: next(); return Term::number(t.number);
      case Tok::Minus: {
        next();
        Token n = expect(Tok::Number);
        return Term::number(-n.number);
      }
      case Tok::Ident: {
        next();
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
          args.push_back(term());
          while (accept(Tok::Comma)) args.push_back(term());
          expect(Tok::RParen);
        }
        return Term::apply(t.text, std::move(args));
      }
      case Tok::LParen: {
        next();
        Term first = term();
        if (accept(Tok::RParen)) return first;
        expect(Tok::Comma);
        Term second = term();
        expect(Tok::RParen);
        return make_pair(std::move(first), std::move(second));
      }
      case Tok::LBrack: {
        next();
        if (accept(Tok::RBrack)) return make_list({});
        std::vector<Term> items{term()};
        while (accept(Tok::Comma)) items.push_back(term());
        std::optional<Term> tail;
        if (accept(Tok::Bar)) tail = term();
        expect(Tok::RBrack);
        return make_list(items, tail);
      }
      default: fail("expected a term, found " + found());
    }
  }

  Atom atom() {
    if (at(Tok::Prim)) {
      Token t = next();
      auto op = primitive_from_name(t.text);
      if (!op) fail_at(t, "unknown primitive " + t.text);
      std::vector<Term> args;
      expect(Tok::LParen);
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen);
      if (args.size() != primitive_arity(*op))
        fail_at(t, t.text + " expects " + std::to_string(primitive_arity(*op)) + " arguments");
      return Atom::primitive(*op, std::move(args));
    }
    Token start = peek();
    Term t = term();
    if (accept(Tok::EqEq)) return Atom::equation(std::move(t), term());
    if (!t.is_apply() || (start.kind != Tok::Ident)) fail_at(start, "expected an atom");
    return Atom::defined(t.name(), t.args());
  }

  QualLiteral qual_literal() {
    QualLiteral lit;
    Token t = peek();
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
      next();
      lit.kind = QualLiteral::Kind::Truth;
      lit.truth = t.text == "true";
    } else if (t.kind == Tok::Ident && t.text == "inf") {
      next();
      lit.kind = QualLiteral::Kind::Infinity;
    } else if (t.kind == Tok::Number) {
      next();
      lit.kind = QualLiteral::Kind::Number;
      lit.number = t.number;
    } else if (t.kind == Tok::Minus && peek(1).kind == Tok::Number) {
      next();
      lit.kind = QualLiteral::Kind::Number;
      lit.number = -next().number;
    } else if (t.kind == Tok::LParen) {
      next();
      lit.kind = QualLiteral::Kind::Pair;
      lit.parts.push_back(qual_literal());
      expect(Tok::Comma);
      lit.parts.push_back(qual_literal());
      expect(Tok::RParen);
    } else {
      fail("expected a qualification value, found " + found());
    }
    return lit;
  }

  QualValue qual_value(const QualDomain& dom) {
    Token start = peek();
    QualLiteral lit = qual_literal();
    try {
      return interpret_literal(dom, lit);
    } catch (const std::exception& e) {
      fail_at(start, e.what());
    }
  }

  Threshold threshold(const QualDomain& dom) {
    if (accept(Tok::Question)) return Threshold::any();
    Token start = peek();
    QualValue v = qual_value(dom);
    if (dom.is_bottom(v)) fail_at(start, "threshold must not be bottom");
    return Threshold::at_least(v);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t* fresh_;
};

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string strip_comment(const std::string& line) {
  auto p = line.find('%');
  return p == std::string::npos ? line : line.substr(0, p);
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

void declare_symbols(Signature& sig, const Term& t, const Token& where, bool strict,
                     std::vector<Violation>& violations) {
  if (!t.is_apply()) return;
  SymbolInfo info{SymbolCategory::Constructor, t.arity()};
  if (strict) {
    const SymbolInfo* known = sig.lookup(t.name());
    if (!known) violations.push_back({"unknown symbol", t.name() + "/" + std::to_string(t.arity())});
    else if (!(*known == info))
      throw ParseError("constructor " + t.name() + "/" + std::to_string(t.arity()) + " conflicts with its declaration",
                       where.line, where.column);
  } else {
    try {
      sig.declare(t.name(), info);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), where.line, where.column);
    }
  }
  for (const Term& a : t.args()) declare_symbols(sig, a, where, strict, violations);
}

void declare_atom(Signature& sig, const Atom& a, const Token& where, bool strict, std::vector<Violation>& violations) {
  if (a.kind() == Atom::Kind::Defined) {
    SymbolInfo info{SymbolCategory::Defined, a.arity()};
    const SymbolInfo* known = sig.lookup(a.predicate());
    if (strict && !known) {
      violations.push_back({"unknown symbol", a.predicate() + "/" + std::to_string(a.arity())});
    } else if (known && !(*known == info)) {
      throw ParseError("predicate " + a.predicate() + "/" + std::to_string(a.arity()) + " conflicts with " +
                           to_string(known->category) + "/" + std::to_string(known->arity),
                       where.line, where.column);
    } else if (!known) {
      sig.declare(a.predicate(), info);
    }
  }
  for (const Term& t : a.args()) declare_symbols(sig, t, where, strict, violations);
}

struct PendingProximity {
  std::string x, y;
  QualValue degree;
  Token where;
};

}  // namespace

ParsedProgram parse_program_text(std::string_view text, const ParseOptions& opts) {
  ParsedProgram out;
  Program& prog = out.program;
  std::vector<std::string> lines = split_lines(text);
  std::size_t fresh = 0;

  // Pass 1: directives and declarations, so that values and symbols resolve regardless of order.
  std::vector<bool> handled(lines.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(strip_comment(lines[i]));
    std::size_t lineno = i + 1;
    if (line.rfind("#qdom", 0) == 0 || line.rfind("#cdom", 0) == 0) {
      std::string arg = trim(line.substr(5));
      if (!arg.empty() && arg.back() == '.') arg = trim(arg.substr(0, arg.size() - 1));
      if (line[1] == 'q') {
        try {
          prog.qdom = parse_domain(arg);
        } catch (const std::exception& e) {
          throw ParseError(e.what(), lineno, 7);
        }
      } else if (arg == "H") {
        prog.cdom = ConstraintDomainKind::Herbrand;
      } else if (arg == "R") {
        prog.cdom = ConstraintDomainKind::Real;
      } else {
        throw ParseError("unknown constraint domain '" + arg + "'", lineno, 7);
      }
      handled[i] = true;
      continue;
    }
    auto toks = lex::tokenize(lines[i], lineno);
    if (toks.size() >= 2 && toks[0].kind == Tok::Ident && toks[1].kind == Tok::Ident &&
        (toks[0].text == "constructor" || toks[0].text == "predicate")) {
      Parser p(toks, &fresh);
      do {
        Token kw = p.expect(Tok::Ident);
        if (kw.text != "constructor" && kw.text != "predicate") p.fail_at(kw, "expected a declaration");
        Token name = p.expect(Tok::Ident);
        p.expect(Tok::Slash);
        Token n = p.expect(Tok::Number);
        if (!is_integer(n.number) || n.number < 0) p.fail_at(n, "arity must be a natural number");
        SymbolInfo info{kw.text == "constructor" ? SymbolCategory::Constructor : SymbolCategory::Defined,
                        static_cast<std::size_t>(numerator(n.number))};
        try {
          prog.signature.declare(name.text, info);
        } catch (const std::invalid_argument& e) {
          p.fail_at(name, e.what());
        }
      } while (p.accept(Tok::Comma) || (p.accept(Tok::Dot) && !p.at(Tok::End)));
      p.expect(Tok::End);
      handled[i] = true;
    }
  }
  prog.prox = ProximityRelation(prog.qdom);

  // Pass 2: proximity entries and clauses.
  std::vector<PendingProximity> pending;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (handled[i]) continue;
    Parser p(lex::tokenize(lines[i], i + 1), &fresh);
    while (!p.at(Tok::End)) {
      if (p.at(Tok::Tilde)) {
        Token where = p.next();
        p.expect(Tok::LParen);
        auto symbol = [&]() {
          if (p.at(Tok::Ident) || p.at(Tok::Prim)) return p.next().text;
          p.fail("expected a symbol, found " + p.found());
        };
        std::string x = symbol();
        p.expect(Tok::Comma);
        std::string y = symbol();
        p.expect(Tok::RParen);
        p.expect(Tok::Equals);
        QualValue d = p.qual_value(prog.qdom);
        if (auto op = primitive_from_name(x)) x = primitive_name(*op);
        if (auto op = primitive_from_name(y)) y = primitive_name(*op);
        if (x == y) p.fail_at(where, "a symbol's proximity to itself is fixed at top");
        pending.push_back({x, y, d, where});
      } else {
        if (p.at(Tok::Var) && p.peek(1).kind == Tok::Colon) {  // optional "R1 :" label
          p.next();
          p.next();
        }
        Token where = p.peek();
        Clause c{"R" + std::to_string(prog.clauses.size() + 1), p.atom(), prog.qdom.top(), {}};
        if (c.head.kind() != Atom::Kind::Defined) p.fail_at(where, "clause head must be a defined atom");
        if (p.accept(Tok::Arrow)) {
          std::size_t m = p.mark();
          // `<-alpha-` when a literal followed by '-' parses here, otherwise the body starts.
          Token at_alpha = p.peek();
          bool has_alpha = false;
          try {
            p.qual_literal();
            has_alpha = p.at(Tok::Minus);
          } catch (const ParseError&) {
          }
          p.reset(m);
          if (has_alpha) {
            c.alpha = p.qual_value(prog.qdom);
            p.expect(Tok::Minus);
            if (prog.qdom.is_bottom(c.alpha)) p.fail_at(at_alpha, "attenuation factor must not be bottom");
          }
          if (!p.at_item_end()) {
            do {
              Atom a = p.atom();
              Threshold w = p.accept(Tok::Hash) ? p.threshold(prog.qdom) : Threshold::any();
              c.body.push_back({std::move(a), std::move(w)});
            } while (p.accept(Tok::Comma));
          }
        }
        declare_atom(prog.signature, c.head, where, opts.strict, out.violations);
        for (const BodyItem& b : c.body) declare_atom(prog.signature, b.atom, where, opts.strict, out.violations);
        prog.clauses.push_back(std::move(c));
      }
      if (!p.accept(Tok::Dot) && !p.at(Tok::End)) p.fail("expected end of item, found " + p.found());
    }
  }

  for (const PendingProximity& e : pending) {
    if (!opts.strict) {
      const SymbolInfo* a = prog.signature.lookup(e.x);
      const SymbolInfo* b = prog.signature.lookup(e.y);
      if (a && !b) prog.signature.declare(e.y, *a);
      if (b && !a) prog.signature.declare(e.x, *b);
    }
    try {
      prog.prox.set(e.x, e.y, e.degree);
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), e.where.line, e.where.column);
    }
  }

  std::vector<Violation> admissibility = validate_admissible(prog.config());
  out.violations.insert(out.violations.end(), admissibility.begin(), admissibility.end());
  return out;
}

Program parse_program(std::string_view text, const ParseOptions& opts) {
  ParsedProgram parsed = parse_program_text(text, opts);
  if (!parsed.violations.empty()) throw AdmissibilityError(std::move(parsed.violations));
  return std::move(parsed.program);
}

Goal parse_goal(std::string_view text, const QualDomain& dom) {
  std::size_t fresh = 0;
  Parser p(lex::tokenize(text), &fresh);
  Goal g;
  std::set<std::string> qvars;
  do {
    GoalItem item{p.atom(), "", Threshold::any()};
    p.expect(Tok::Hash);
    Token q = p.expect(Tok::Var);
    if (q.text == "_") p.fail_at(q, "qualification variable must be named");
    if (!qvars.insert(q.text).second) p.fail_at(q, "duplicate qualification variable " + q.text);
    item.qvar = q.text;
    g.items.push_back(std::move(item));
  } while (p.accept(Tok::Comma));
  if (p.accept(Tok::Bar)) {
    do {
      Token q = p.expect(Tok::Var);
      auto it = std::find_if(g.items.begin(), g.items.end(), [&](const GoalItem& i) { return i.qvar == q.text; });
      if (it == g.items.end()) p.fail_at(q, "unknown qualification variable " + q.text);
      p.expect(Tok::Geq);
      it->threshold = p.threshold(dom);
    } while (p.accept(Tok::Comma));
  }
  p.accept(Tok::Dot);
  if (!p.at(Tok::End)) p.fail("unexpected " + p.found());
  std::set<std::string> term_vars = g.variables();
  for (const std::string& q : qvars)
    if (term_vars.count(q)) throw ParseError("qualification variable " + q + " also used as a term variable", 1, 1);
  return g;
}

Term parse_term(std::string_view text) {
  std::size_t fresh = 0;
  Parser p(lex::tokenize(text), &fresh);
  Term t = p.term();
  if (!p.at(Tok::End)) p.fail("unexpected " + p.found());
  return t;
}

Atom parse_atom(std::string_view text) {
  std::size_t fresh = 0;
  Parser p(lex::tokenize(text), &fresh);
  Atom a = p.atom();
  if (!p.at(Tok::End)) p.fail("unexpected " + p.found());
  return a;
}

std::vector<Atom> parse_constraints(std::string_view text) {
  std::size_t fresh = 0;
  Parser p(lex::tokenize(text), &fresh);
  std::vector<Atom> out;
  if (p.at(Tok::End)) return out;
  do {
    Token where = p.peek();
    Atom a = p.atom();
    if (a.kind() == Atom::Kind::Defined) p.fail_at(where, "constraints must be equations or primitive atoms");
    out.push_back(std::move(a));
  } while (p.accept(Tok::Comma));
  if (!p.at(Tok::End)) p.fail("unexpected " + p.found());
  return out;
}

std::string to_string(const Clause& c) {
  std::string out = to_string(c.head) + " <-" + to_string(c.alpha) + "-";
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    out += i ? ", " : " ";
    out += to_string(c.body[i].atom) + "#" + to_string(c.body[i].threshold);
  }
  return out;
}

std::string to_string(const Goal& g) {
  std::string out;
  std::string conds;
  for (std::size_t i = 0; i < g.items.size(); ++i) {
    if (i) out += ", ";
    out += to_string(g.items[i].atom) + "#" + g.items[i].qvar;
    if (!g.items[i].threshold.is_any()) {
      conds += conds.empty() ? " | " : ", ";
      conds += g.items[i].qvar + " >= " + to_string(g.items[i].threshold);
    }
  }
  return out + conds;
}

std::string to_source(const Program& p) {
  std::ostringstream out;
  out << "#qdom " << p.qdom.name() << "\n";
  out << "#cdom " << (p.cdom == ConstraintDomainKind::Herbrand ? "H" : "R") << "\n";
  Signature builtins;
  for (const auto& [name, info] : p.signature.symbols()) {
    if (builtins.contains(name)) continue;
    out << (info.category == SymbolCategory::Constructor ? "constructor " : "predicate ") << name << "/" << info.arity
        << "\n";
  }
  for (const auto& e : p.prox.entries()) out << "~(" << e.x << ", " << e.y << ") = " << to_string(e.degree) << "\n";
  for (const Clause& c : p.clauses) out << to_string(c) << "\n";
  return out.str();
}

}  // namespace sqclp
