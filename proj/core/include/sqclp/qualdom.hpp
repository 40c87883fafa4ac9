#pragma once

#include "sqclp/rational.hpp"
#include "sqclp/terms.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sqclp {

class CarrierError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QualValue {
 public:
  struct Truth {
    bool value;
    friend bool operator==(const Truth&, const Truth&) = default;
  };
  struct Certainty {
    Rational value;
    friend bool operator==(const Certainty&, const Certainty&) = default;
  };
  struct Cost {
    Rational value;  // ignored when infinite
    bool infinite = false;
    friend bool operator==(const Cost& a, const Cost& b) {
      return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
  };
  struct Pair {
    std::shared_ptr<const QualValue> left;
    std::shared_ptr<const QualValue> right;
    friend bool operator==(const Pair& a, const Pair& b) { return *a.left == *b.left && *a.right == *b.right; }
  };

  static QualValue truth(bool b) { return QualValue(Truth{b}); }
  static QualValue certainty(Rational q) { return QualValue(Certainty{std::move(q)}); }
  static QualValue cost(Rational c) { return QualValue(Cost{std::move(c), false}); }
  static QualValue infinite_cost() { return QualValue(Cost{Rational(0), true}); }
  static QualValue pair(QualValue left, QualValue right);

  bool is_truth() const { return std::holds_alternative<Truth>(rep_); }
  bool is_certainty() const { return std::holds_alternative<Certainty>(rep_); }
  bool is_cost() const { return std::holds_alternative<Cost>(rep_); }
  bool is_pair() const { return std::holds_alternative<Pair>(rep_); }

  bool truth_value() const { return std::get<Truth>(rep_).value; }
  const Rational& certainty_value() const { return std::get<Certainty>(rep_).value; }
  const Cost& cost_value() const { return std::get<Cost>(rep_); }
  const QualValue& left() const { return *std::get<Pair>(rep_).left; }
  const QualValue& right() const { return *std::get<Pair>(rep_).right; }

  friend bool operator==(const QualValue&, const QualValue&) = default;

 private:
  using Rep = std::variant<Truth, Certainty, Cost, Pair>;
  explicit QualValue(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

std::string to_string(const QualValue& v);

// The "?" marker is an empty threshold.
struct Threshold {
  std::optional<QualValue> value;
  static Threshold any() { return {}; }
  static Threshold at_least(QualValue v) { return {std::move(v)}; }
  bool is_any() const { return !value.has_value(); }
  friend bool operator==(const Threshold&, const Threshold&) = default;
};

std::string to_string(const Threshold& w);

// A qualification domain: lattice with bottom/top plus attenuation.
class QualDomain {
 public:
  enum class Kind : unsigned char {
    Bool, Unit, UnitMin, Weight, WeightMax, WeightNat, WeightNatMax, Cartesian, Strict
  };

  static QualDomain boolean() { return QualDomain(Kind::Bool); }
  static QualDomain certainty() { return QualDomain(Kind::Unit); }          // U
  static QualDomain certainty_min() { return QualDomain(Kind::UnitMin); }   // U'
  static QualDomain weight() { return QualDomain(Kind::Weight); }           // W
  static QualDomain weight_max() { return QualDomain(Kind::WeightMax); }    // W'
  static QualDomain weight_nat() { return QualDomain(Kind::WeightNat); }    // W_d
  static QualDomain weight_nat_max() { return QualDomain(Kind::WeightNatMax); }  // W'_d

  Kind kind() const { return kind_; }
  bool is_product() const { return kind_ == Kind::Cartesian || kind_ == Kind::Strict; }
  const QualDomain& first() const;
  const QualDomain& second() const;

  // Short name in directive syntax: B, U, U', W, W', Wd, Wd', (AxB) strict, (A*B) cartesian.
  std::string name() const;

  QualValue bottom() const;
  QualValue top() const;
  bool contains(const QualValue& v) const;
  bool is_bottom(const QualValue& v) const { return v == bottom(); }
  bool is_top(const QualValue& v) const { return v == top(); }

  bool leq(const QualValue& d, const QualValue& e) const;
  QualValue glb(const QualValue& d, const QualValue& e) const;
  QualValue lub(const QualValue& d, const QualValue& e) const;
  QualValue attenuate(const QualValue& d, const QualValue& e) const;
  QualValue infimum(const std::vector<QualValue>& vs) const;
  bool threshold_ok(const QualValue& e, const Threshold& w) const;

  // Collapses pairs with a bottom component to the product bottom (strict products only).
  QualValue strict_pair(QualValue left, QualValue right) const;

  friend bool operator==(const QualDomain& a, const QualDomain& b);

 private:
  friend QualDomain make_product(QualDomain d1, QualDomain d2, bool strict);
  explicit QualDomain(Kind kind) : kind_(kind) {}
  QualDomain(Kind kind, QualDomain d1, QualDomain d2);

  Kind kind_;
  std::shared_ptr<const std::pair<QualDomain, QualDomain>> parts_;
};

QualDomain make_product(QualDomain d1, QualDomain d2, bool strict);

// Untyped value literal as written in programs: true/false, decimals, inf, (a,b).
struct QualLiteral {
  enum class Kind : unsigned char { Truth, Number, Infinity, Pair };
  Kind kind = Kind::Number;
  bool truth = false;
  Rational number;
  std::vector<QualLiteral> parts;
};

QualValue interpret_literal(const QualDomain& dom, const QualLiteral& lit);
QualLiteral parse_qual_literal(const std::string& text);
QualValue parse_qual_value(const QualDomain& dom, const std::string& text);

// Parses directive text such as "U", "UxW", "(U'xW)xB", "B*B".
QualDomain parse_domain(const std::string& text);

// Stability: attenuation of non-bottom values never yields bottom. Exact for the basic domains,
// sample-based for products.
bool is_stable(const QualDomain& dom, const std::vector<std::pair<QualValue, QualValue>>& sample);

// Constraint encodings of the domain into the real constraint domain. The embedding maps
// rational payloads to basic values and pairs to `pair(_,_)`. Throws for cartesian products.
Constraint encode_qval(const QualDomain& dom, const std::string& x);
Constraint encode_qbound(const QualDomain& dom, const std::string& x, const std::string& y,
                         const std::string& z);
// Embedding of a non-bottom value into a term. Throws CarrierError for bottom.
Term embed_value(const QualDomain& dom, const QualValue& v);

// Domain table: which domains are expressible in the Herbrand (equations only) domain.
bool expressible_in_herbrand(const QualDomain& dom);
bool expressible_in_real(const QualDomain& dom);

}  // namespace sqclp
